//! Holomorphic (coherent-state) representation: the same vacuum expectation
//! written as an iterated Gaussian moment evaluation over n−1 coherent pairs.

use std::time::Instant;

use crate::error::AlgebraError;
use crate::fock::{gaussian_pair_reduce, CoherentExpr};
use crate::ncdet::{cauchy_binet_lhs, commutation_report, DetVariant, NCMatrix, Permutation};
use crate::ring::{Ring, TermView};

use super::oscillator::{matrix_powers, oscillator_rhs};
use super::{compare_sides, hypothesis_error, Realization, VerificationResult};

/// The coherent-kernel matrix entries
/// M_ij(z) = A_ij z_j + Σ_{ν=0}^{trunc} z̄_{j−1}^ν (X B^ν Y)_ij
/// with the boundary convention z_0 = z_n = 0 (column indices 1-based).
fn coherent_matrix<R: Ring>(
    r: &Realization<R>,
    trunc: usize,
) -> NCMatrix<CoherentExpr<R>> {
    let n = r.n;
    let pairs = n.saturating_sub(1);
    let kernel_terms: Vec<NCMatrix<R>> = matrix_powers(&r.b, trunc)
        .iter()
        .map(|bp| r.x.mat_mul(bp).mat_mul(&r.y))
        .collect();
    NCMatrix::from_fn(n, n, |i, j| {
        let col = j + 1; // 1-based column index
        let mut entry = CoherentExpr::zero_with(pairs);
        // A_ij z_j, dropped in the last column where z_n = 0
        if col < n {
            let a_ij = r.a.get(i, j).clone();
            if !a_ij.is_zero() {
                entry = CoherentExpr::add(&entry, &CoherentExpr::z_power(pairs, col, 1, a_ij));
            }
        }
        for (nu, xbny) in kernel_terms.iter().enumerate() {
            let c = xbny.get(i, j).clone();
            if c.is_zero() {
                continue;
            }
            // z̄_{j−1}^ν with z̄_0 = 0: only ν = 0 survives in the first column
            let term = if col == 1 {
                if nu == 0 {
                    CoherentExpr::scalar(pairs, c)
                } else {
                    continue;
                }
            } else if nu == 0 {
                CoherentExpr::scalar(pairs, c)
            } else {
                CoherentExpr::zbar_power(pairs, col - 1, nu as u32, c)
            };
            entry = CoherentExpr::add(&entry, &term);
        }
        entry
    })
}

/// Iterated Gaussian reduction of the kernel-expanded col-det M(z), reduced
/// eagerly: pair j−1 involves only columns j−1 (through z_{j−1}) and j
/// (through z̄_{j−1}), so it can be integrated out as soon as column j has
/// been multiplied in. This is the fixed reduction order j = 1, …, n−1.
pub fn holomorphic_rhs<R: Ring>(r: &Realization<R>) -> Result<R, AlgebraError> {
    let n = r.n;
    let m = coherent_matrix(r, n);
    let pairs = n.saturating_sub(1);
    let mut acc = R::zero();
    for sigma in Permutation::all(n) {
        let mut prod: CoherentExpr<R> = CoherentExpr::scalar(pairs, R::one());
        for j in 0..n {
            prod = CoherentExpr::mul(&prod, m.get(sigma.apply(j), j));
            if j >= 1 {
                prod = gaussian_pair_reduce(&prod, j);
            }
        }
        acc = acc.add(&prod.constant_part().scale_int(sigma.sign()));
    }
    Ok(acc)
}

/// Column-variant coherent-state form: the reduced col-det M(z) equals both
/// the Cauchy–Binet LHS and the Fock-representation value.
pub fn verify_holomorphic_coldet<R: TermView + std::fmt::Display>(
    r: &Realization<R>,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let report = commutation_report(&r.x, &r.y, &r.a, &r.b)?;
    if !report.x_row_pseudo_commutative.holds {
        return Err(hypothesis_error(
            "X row-pseudo-commutative",
            &report.x_row_pseudo_commutative,
        ));
    }
    if !report.xy_relation.holds {
        return Err(hypothesis_error("[X,Y] = −AB", &report.xy_relation));
    }
    if !report.xa_row_symmetric.holds {
        return Err(hypothesis_error(
            "[X_ij,A_kl] − [X_kj,A_il] = 0",
            &report.xa_row_symmetric,
        ));
    }
    if !report.b_central.holds {
        return Err(hypothesis_error("B central", &report.b_central));
    }
    let lhs = cauchy_binet_lhs(DetVariant::Col, &r.x, &r.y)?;
    let rhs = holomorphic_rhs(r)?;
    let fock_value = oscillator_rhs(r, DetVariant::Col, r.n)?;
    let params = r.params_string();
    let against_lhs = compare_sides("holomorphic_coldet", params.clone(), &lhs, &rhs, started);
    let against_fock = compare_sides(
        "holomorphic_vs_fock",
        params.clone(),
        &fock_value,
        &rhs,
        started,
    );
    Ok(super::combine_results(
        "holomorphic_coldet",
        params,
        vec![against_lhs, against_fock],
        started,
    ))
}
