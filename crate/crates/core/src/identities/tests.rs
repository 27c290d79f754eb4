use super::*;
use crate::ncdet::{cauchy_binet_lhs, nc_det, DetVariant};
use crate::ring::{rat, ratio, Rational};
use crate::series::TruncSeries;

fn poly_f(coeffs: &[Rational], order: usize) -> TruncSeries<Rational> {
    TruncSeries::from_poly(coeffs, order)
}

#[test]
fn capelli_n1_quantum_cauchy_binet() {
    let r = realize_capelli(1);
    let res = verify_cauchy_binet_quantum(&r, DetVariant::Col).unwrap();
    assert!(res.passed(), "{res}");
    let res = verify_cauchy_binet_quantum(&r, DetVariant::Row).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn capelli_n2_quantum_cauchy_binet_both_variants() {
    let r = realize_capelli(2);
    for variant in [DetVariant::Col, DetVariant::Row] {
        let res = verify_cauchy_binet_quantum(&r, variant).unwrap();
        assert!(res.passed(), "{res}");
    }
}

#[test]
fn quantum_cauchy_binet_rejects_non_identity_b() {
    let r = realize_weyl_example(2, 3, 1).unwrap();
    let err = verify_cauchy_binet_quantum(&r, DetVariant::Col).unwrap_err();
    assert!(matches!(err, crate::AlgebraError::Usage(_)));
}

#[test]
fn capelli_n2_oscillator_rep() {
    let r = realize_capelli(2);
    for variant in [DetVariant::Col, DetVariant::Row] {
        let res = verify_oscillator_rep(&r, variant, None).unwrap();
        assert!(res.passed(), "{res}");
    }
    // RHS coincides with the quantum Cauchy–Binet RHS when B = I
    let xy = r.x.mat_mul(&r.y);
    let q = crate::ncdet::q_correction(DetVariant::Col, &r.a).unwrap();
    let quantum = nc_det(DetVariant::Col, &xy.add(&q)).unwrap();
    let osc = oscillator_rhs(&r, DetVariant::Col, 2).unwrap();
    assert_eq!(osc, quantum);
}

#[test]
fn weyl_example_2_2_1_oscillator_both_variants() {
    let r = realize_weyl_example(2, 2, 1).unwrap();
    for variant in [DetVariant::Col, DetVariant::Row] {
        let res = verify_oscillator_rep(&r, variant, None).unwrap();
        assert!(res.passed(), "{res}");
    }
}

#[test]
fn weyl_example_rank_of_b() {
    // s_dim < m: B is not invertible; concretely its 2×2 minors vanish when
    // s_dim = 1, so det of any 2×2 submatrix is zero
    let r = realize_weyl_example(2, 3, 1).unwrap();
    let b01 = r.b.minor(&[0, 1], &[0, 1]).unwrap();
    let det = nc_det(DetVariant::Col, &b01).unwrap();
    assert!(det.is_zero());
}

#[test]
fn truncation_soundness_beyond_n() {
    let r = realize_weyl_example(2, 2, 1).unwrap();
    let at_n = oscillator_rhs(&r, DetVariant::Col, 2).unwrap();
    let at_n1 = oscillator_rhs(&r, DetVariant::Col, 3).unwrap();
    let at_n2 = oscillator_rhs(&r, DetVariant::Col, 4).unwrap();
    assert_eq!(at_n, at_n1);
    assert_eq!(at_n, at_n2);
}

#[test]
fn capelli_n2_grassmann_rep() {
    let r = realize_capelli(2);
    let res = verify_grassmann_rep(&r, DetVariant::Col).unwrap();
    assert!(res.passed(), "{res}");
    // equals the oscillator value term for term
    let g = grassmann_rhs(&r, DetVariant::Col).unwrap();
    let o = oscillator_rhs(&r, DetVariant::Col, 2).unwrap();
    assert_eq!(g, o);
}

#[test]
fn capelli_n2_holomorphic() {
    let r = realize_capelli(2);
    let res = verify_holomorphic_coldet(&r).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn capelli_n2_direct_grassmann() {
    let r = realize_capelli(2);
    let res = verify_direct_grassmann(&r).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn capelli_n2_support_lemmas() {
    let r = realize_capelli(2);
    let res = verify_support_lemmas(&r).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn capelli_cross_representation() {
    let r = realize_capelli(2);
    let res = verify_cross_representation(&r).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn prop_old_small() {
    for n in 1..=2 {
        let res = verify_prop_old(n).unwrap();
        assert!(res.passed(), "{res}");
    }
}

#[test]
fn multilin_k1_reduces_to_prop_old_row_case() {
    let f = poly_f(&[rat(1), rat(-1)], 4);
    let res = verify_multilin(2, 1, &f, Some(rat(0)), 7).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn multilin_k2_symbolic_s() {
    let f = poly_f(&[rat(1), rat(-1), ratio(1, 2)], 6);
    let res = verify_multilin(2, 2, &f, None, 11).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn lem_faf_small_grid() {
    let f = poly_f(&[rat(1), rat(-1)], 4);
    let res = verify_lem_faf(&f, 2, 2).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn cbh_f_equals_a() {
    let f = poly_f(&[rat(0), rat(1)], 2);
    let res = verify_cbh(&f, 4).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn cbh_f_zero_trivial() {
    let f = TruncSeries::zero_series(2);
    let res = verify_cbh(&f, 4).unwrap();
    assert!(res.passed(), "{res}");
}

#[test]
fn weyl_example_2_2_2_with_identity_flavors_reduces_to_capelli() {
    use std::collections::BTreeMap;
    let r = realize_weyl_example(2, 2, 2).unwrap();
    let cap = realize_capelli(2);
    // bind α_j^a = δ_{ja}, β_k^a = δ_{ka}
    let mut bindings = BTreeMap::new();
    for j in 1..=2usize {
        for a in 1..=2usize {
            let delta = if j == a { rat(1) } else { rat(0) };
            bindings.insert(format!("α_{j}^{a}"), delta.clone());
            bindings.insert(format!("β_{j}^{a}"), delta);
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let x_bound = r.x.get(i, j).substitute_params(&bindings).transpose_grid();
            assert_eq!(&x_bound, cap.x.get(i, j), "X[{i}][{j}]");
            let y_bound = r.y.get(i, j).substitute_params(&bindings).transpose_grid();
            assert_eq!(&y_bound, cap.y.get(i, j), "Y[{i}][{j}]");
        }
    }
}

#[test]
fn lhs_commutative_sanity() {
    // Capelli LHS equals det X · det ∂ computed directly
    let r = realize_capelli(2);
    let lhs = cauchy_binet_lhs(DetVariant::Col, &r.x, &r.y).unwrap();
    let detx = nc_det(DetVariant::Col, &r.x).unwrap();
    let dety = nc_det(DetVariant::Col, &r.y).unwrap();
    assert_eq!(lhs, detx.mul(&dety));
}

#[test]
fn commutation_profiles_match_provenance() {
    use crate::ncdet::commutation_report;

    // classical realization: every hypothesis holds
    let r = realize_capelli(2);
    let rep = commutation_report(&r.x, &r.y, &r.a, &r.b).unwrap();
    assert!(rep.x_row_pseudo_commutative.holds);
    assert!(rep.y_column_pseudo_commutative.holds);
    assert!(rep.y_row_pseudo_commutative.holds);
    assert!(rep.xy_relation.holds);
    assert!(rep.xa_row_symmetric.holds);
    assert!(rep.ya_column_symmetric.holds);
    assert!(rep.b_central.holds);

    // symbolic realization: the same profile, with B of deficient rank
    let r = realize_weyl_example(2, 3, 1).unwrap();
    let rep = commutation_report(&r.x, &r.y, &r.a, &r.b).unwrap();
    assert!(rep.grassmann_col_hypotheses_hold());
    assert!(rep.row_hypotheses_hold());

    // free generators: pseudo-commutativity and the commutator relation
    // fail with witnesses
    let r = realize_free(2, 2);
    let rep = commutation_report(&r.x, &r.y, &r.a, &r.b).unwrap();
    assert!(!rep.x_row_pseudo_commutative.holds);
    assert!(rep.x_row_pseudo_commutative.witness.is_some());
    assert!(!rep.xy_relation.holds);
    assert!(rep.b_central.holds);
}

#[test]
fn hypothesis_gate_rejects_free_realization() {
    let r = realize_free(2, 2);
    let err = verify_oscillator_rep(&r, DetVariant::Col, None).unwrap_err();
    let message = err.to_string();
    assert!(message.contains("hypothesis violated"), "{message}");
    let err = verify_grassmann_rep(&r, DetVariant::Col).unwrap_err();
    assert!(err.to_string().contains("hypothesis violated"));
}
