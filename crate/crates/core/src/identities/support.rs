//! Supporting lemmas verified on realizations: permutation covariance of the
//! column determinant, invariance of alternating sums under column-label
//! permutations, quadratic-form commutation, and the X/A exchange identity.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::AlgebraError;
use crate::ncdet::{
    commutation_report, nc_det, permute, subsets, DetVariant, NCMatrix, PermuteSide, Permutation,
};
use crate::ring::{Ring, TermView};

use super::grassmann_rep::psi_bar_m_psi;
use super::oscillator::matrix_powers;
use super::{combine_results, compare_sides, Realization, VerificationResult};

/// Σ_σ sgn(σ) Π_i M_{σ(i) ℓ_i}, the ordered alternating sum over rows with a
/// free choice of column labels.
fn alternating_sum<R: Ring>(m: &NCMatrix<R>, labels: &[usize]) -> R {
    let n = m.rows();
    let mut acc = R::zero();
    for sigma in Permutation::all(n) {
        let factors: Vec<R> = (0..n)
            .map(|i| m.get(sigma.apply(i), labels[i]).clone())
            .collect();
        acc = acc.add(&R::ordered_product(&factors).scale_int(sigma.sign()));
    }
    acc
}

pub fn verify_support_lemmas<R: TermView + std::fmt::Display>(
    r: &Realization<R>,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let n = r.n;
    let m = r.m;
    let mut parts = Vec::new();
    let all_rows: Vec<usize> = (0..n).collect();

    // col-det M^τ = sgn(τ) col-det M on every square minor of X
    for l in subsets(m, n) {
        let xl = r.x.minor(&all_rows, &l)?;
        let base = nc_det(DetVariant::Col, &xl)?;
        for tau in Permutation::all(n) {
            let permuted = nc_det(DetVariant::Col, &permute(&xl, &tau, PermuteSide::Cols)?)?;
            let mut params = BTreeMap::new();
            params.insert("minor".to_string(), format!("{l:?}"));
            params.insert("tau_sign".to_string(), tau.sign().to_string());
            parts.push(compare_sides(
                "coldet_permutation_covariance",
                params,
                &permuted,
                &base.scale_int(tau.sign()),
                started,
            ));
        }
    }

    // alternating sums over X are invariant under permuting column labels
    // together with positions: F(ℓ) = sgn(π) F(ℓ∘π)
    {
        let mut labels = vec![0usize; n];
        let mut values: BTreeMap<Vec<usize>, R> = BTreeMap::new();
        loop {
            values.insert(labels.clone(), alternating_sum(&r.x, &labels));
            let mut t = 0;
            while t < n {
                if labels[t] + 1 < m {
                    labels[t] += 1;
                    break;
                }
                labels[t] = 0;
                t += 1;
            }
            if t == n {
                break;
            }
        }
        let mut failures = 0usize;
        let mut first: Option<(Vec<usize>, R, R)> = None;
        for (labels, value) in &values {
            for pi in Permutation::all(n) {
                let permuted_labels: Vec<usize> = (0..n).map(|i| labels[pi.apply(i)]).collect();
                let expected = values[&permuted_labels].scale_int(pi.sign());
                if *value != expected {
                    failures += 1;
                    if first.is_none() {
                        first = Some((labels.clone(), value.clone(), expected));
                    }
                }
            }
        }
        let mut params = BTreeMap::new();
        params.insert("label_tuples".to_string(), values.len().to_string());
        let (lhs, rhs) = match &first {
            Some((_, v, e)) => (v.clone(), e.clone()),
            None => (R::zero(), R::zero()),
        };
        let mut res = compare_sides("row_symmetric_alternating_sum", params, &lhs, &rhs, started);
        if failures > 0 {
            res.status = super::Status::Fail;
        }
        parts.push(res);
    }

    // [ψ̄ X B^s Y ψ, ψ̄ A ψ] = 0 for s ≤ 2
    {
        let a_quad = psi_bar_m_psi(n, &r.a);
        for (s, bp) in matrix_powers(&r.b, 2).iter().enumerate() {
            let quad = psi_bar_m_psi(n, &r.x.mat_mul(bp).mat_mul(&r.y));
            let comm = quad.checked_mul(&a_quad)?.sub(&a_quad.checked_mul(&quad)?);
            let mut params = BTreeMap::new();
            params.insert("s".to_string(), s.to_string());
            parts.push(compare_sides(
                "quadratic_form_commutation",
                params,
                &comm,
                &crate::grassmann::GrassmannElement::zero_with(2 * n),
                started,
            ));
        }
    }

    // [X_ij, A_kl] − [X_kj, A_il] = 0
    {
        let report = commutation_report(&r.x, &r.y, &r.a, &r.b)?;
        let mut params = BTreeMap::new();
        params.insert(
            "witness".to_string(),
            report
                .xa_row_symmetric
                .witness
                .as_ref()
                .map(|w| format!("{w:?}"))
                .unwrap_or_else(|| "none".to_string()),
        );
        let mut res = compare_sides(
            "xa_exchange",
            params,
            &R::zero(),
            &R::zero(),
            started,
        );
        if !report.xa_row_symmetric.holds {
            res.status = super::Status::Fail;
            res.first_discrepancy = Some(format!(
                "xa_row_symmetric {}",
                report.xa_row_symmetric
            ));
        }
        parts.push(res);
    }

    Ok(combine_results(
        "support_lemmas",
        r.params_string(),
        parts,
        started,
    ))
}
