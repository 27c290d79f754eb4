//! Bridges between the determinant variants and their integral
//! representations, exercised on the classical realization where the entries
//! genuinely fail to commute.

use nccb_core::fock::{FockElement, FockMonomial};
use nccb_core::identities::{realize_capelli, verify_substitution, SubstitutionKind};
use nccb_core::ncdet::{nc_det, permute, q_correction, DetVariant, NCMatrix, PermuteSide, Permutation};
use nccb_core::ring::{rat, Rational, Ring};
use nccb_core::scalars::{ParamPoly, ParamSet};
use nccb_core::series::TruncSeries;
use nccb_core::weyl::WeylElement;

/// The Capelli matrix XY + Q^col with noncommuting entries.
fn capelli_matrix(n: usize) -> NCMatrix<WeylElement> {
    let r = realize_capelli(n);
    let xy = r.x.mat_mul(&r.y);
    xy.add(&q_correction(DetVariant::Col, &r.a).unwrap())
}

fn row_pseudo_commutative<R: Ring>(m: &NCMatrix<R>) -> bool {
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs = m.get(i, j).commutator(m.get(k, l));
                    let rhs = m.get(k, j).commutator(m.get(i, l));
                    if lhs != rhs {
                        return false;
                    }
                    if j == l && !lhs.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A noncommutative row-pseudo-commutative matrix over the oscillator
/// algebra: M_ij = u_i v_j a + u_i w_j a†, whose commutators
/// [M_ij, M_kl] = u_i u_k (v_j w_l − w_j v_l) are symmetric under the row
/// swap i ↔ k and vanish in a common column.
fn outer_product_oscillator_matrix(n: usize) -> NCMatrix<FockElement<ParamPoly>> {
    let names: Vec<String> = (1..=n)
        .flat_map(|i| [format!("u_{i}"), format!("v_{i}"), format!("w_{i}")])
        .collect();
    let params = ParamSet::declare(names);
    NCMatrix::from_fn(n, n, |i, j| {
        let u = params.var(&format!("u_{}", i + 1));
        let v = params.var(&format!("v_{}", j + 1));
        let w = params.var(&format!("w_{}", j + 1));
        FockElement::from_terms([
            (FockMonomial::new(0, 1), u.mul(&v)),
            (FockMonomial::new(1, 0), u.mul(&w)),
        ])
    })
}

#[test]
fn sym_det_equals_col_det_for_row_pseudo_commutative() {
    for n in 2..=3usize {
        let m = outer_product_oscillator_matrix(n);
        assert!(row_pseudo_commutative(&m), "n={n}");
        // entries genuinely fail to commute
        let c = m.get(0, 0).commutator(m.get(0, 1));
        assert!(!c.is_zero(), "n={n}");
        let sym = nc_det(DetVariant::Sym, &m).unwrap();
        let col = nc_det(DetVariant::Col, &m).unwrap();
        assert_eq!(sym, col, "n={n}");
    }
}

#[test]
fn coldet_permutation_covariance_for_row_pseudo_commutative() {
    let m = outer_product_oscillator_matrix(3);
    let base = nc_det(DetVariant::Col, &m).unwrap();
    for tau in Permutation::all(3) {
        let det = nc_det(DetVariant::Col, &permute(&m, &tau, PermuteSide::Cols).unwrap()).unwrap();
        assert_eq!(det, base.scale_int(tau.sign()));
    }
}

#[test]
fn sym_det_matches_its_column_average_form() {
    // sym-det M = (1/n!) Σ_τ sgn(τ) col-det M^τ, on any matrix
    let m = capelli_matrix(2);
    let n = m.rows();
    let mut acc = WeylElement::zero();
    for tau in Permutation::all(n) {
        let det = nc_det(DetVariant::Col, &permute(&m, &tau, PermuteSide::Cols).unwrap()).unwrap();
        acc = acc.add(&det.scale_int(tau.sign()));
    }
    let averaged = acc.try_div_int(2).unwrap();
    assert_eq!(averaged, nc_det(DetVariant::Sym, &m).unwrap());
}

#[test]
fn substitution_dispatcher_routes_all_kinds() {
    let f = TruncSeries::from_poly(&[rat(1), rat(-1)], 4);
    for kind in [
        SubstitutionKind::PropOld,
        SubstitutionKind::Multilin,
        SubstitutionKind::LemFaf,
    ] {
        let res = verify_substitution(kind, 2, 1, &f, Some(rat(1)), 3).unwrap();
        assert!(res.passed(), "{kind:?}: {res}");
    }
    let _ = Rational::zero();
}
