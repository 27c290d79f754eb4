//! The quantum Cauchy–Binet identities: the classical quantum-corrected form
//! (B = I) and the oscillator representation with (1 − a†B)^{-1} kernels.

use std::time::Instant;

use crate::error::AlgebraError;
use crate::fock::FockElement;
use crate::ncdet::{
    cauchy_binet_lhs, commutation_report, nc_det, q_correction, DetVariant, NCMatrix, Permutation,
};
use crate::ring::{Ring, TermView};

use super::{compare_sides, hypothesis_error, Realization, VerificationResult};

/// Powers B^0 … B^max of a square matrix.
pub(crate) fn matrix_powers<R: Ring>(b: &NCMatrix<R>, max: usize) -> Vec<NCMatrix<R>> {
    let mut powers = Vec::with_capacity(max + 1);
    powers.push(NCMatrix::identity(b.rows()));
    for _ in 0..max {
        powers.push(powers.last().unwrap().mat_mul(b));
    }
    powers
}

/// Ordered determinant of a Fock-valued matrix with exact reachability
/// pruning, followed by the vacuum expectation.
///
/// After multiplying t of the n factors, a term with count difference d can
/// still reach the constant monomial only if the remaining n−t factors can
/// supply a total difference of −d; each remaining factor shifts the
/// difference by something in [step_min, step_max]. Terms outside that window
/// are dropped — exact by count-difference conservation.
pub(crate) fn det_vacuum_pruned<R: Ring>(
    variant: DetVariant,
    m: &NCMatrix<FockElement<R>>,
    step_min: i64,
    step_max: i64,
) -> Result<R, AlgebraError> {
    if m.rows() != m.cols() {
        return Err(AlgebraError::usage("determinant of a non-square matrix"));
    }
    let n = m.rows();
    let mut acc: FockElement<R> = FockElement::zero();
    for sigma in Permutation::all(n) {
        let mut prod: FockElement<R> = FockElement::one();
        for t in 0..n {
            let factor = match variant {
                DetVariant::Col => m.get(sigma.apply(t), t),
                DetVariant::Row => m.get(t, sigma.apply(t)),
                DetVariant::Sym => unreachable!("sym uses the unpruned route"),
            };
            // need step_min·remaining ≤ −d ≤ step_max·remaining, i.e.
            // d ∈ [−step_max·remaining, −step_min·remaining]
            let remaining = (n - t - 1) as i64;
            prod = prod.mul_diff_window(factor, -step_max * remaining, -step_min * remaining);
        }
        acc = acc.add(&prod.scale_int(sigma.sign()));
    }
    Ok(acc.vacuum_expectation())
}

/// ⟨0| det_variant of the oscillator matrix |0⟩, with the geometric kernel
/// truncated at power `trunc`:
/// col: M_ij = a A_ij + Σ_{ν≤trunc} (a†)^ν (X B^ν Y)_ij,
/// row: M_ij = a† A_ij + Σ_{ν≤trunc} a^ν (X B^ν Y)_ij.
pub fn oscillator_rhs<R: Ring>(
    r: &Realization<R>,
    variant: DetVariant,
    trunc: usize,
) -> Result<R, AlgebraError> {
    let n = r.n;
    let powers = matrix_powers(&r.b, trunc);
    let kernel_terms: Vec<NCMatrix<R>> = powers
        .iter()
        .map(|bp| r.x.mat_mul(bp).mat_mul(&r.y))
        .collect();
    let mfock: NCMatrix<FockElement<R>> = NCMatrix::from_fn(n, n, |i, j| {
        use crate::fock::FockMonomial;
        let a_mono = match variant {
            DetVariant::Col => FockMonomial::new(0, 1),
            DetVariant::Row => FockMonomial::new(1, 0),
            DetVariant::Sym => unreachable!(),
        };
        let mut entry = FockElement::from_terms([(a_mono, r.a.get(i, j).clone())]);
        for (nu, xby) in kernel_terms.iter().enumerate() {
            let coeff = xby.get(i, j).clone();
            if coeff.is_zero() {
                continue;
            }
            let mono = match variant {
                DetVariant::Col => FockMonomial::new(nu as u32, 0),
                DetVariant::Row => FockMonomial::new(0, nu as u32),
                DetVariant::Sym => unreachable!(),
            };
            entry = entry.add(&FockElement::from_terms([(mono, coeff)]));
        }
        entry
    });
    // col: each factor shifts the count difference by −1 (the aA part) up to
    // +trunc (kernel creators); row is the mirror image.
    let (step_min, step_max) = match variant {
        DetVariant::Col => (-1, trunc as i64),
        DetVariant::Row => (-(trunc as i64), 1),
        DetVariant::Sym => unreachable!(),
    };
    det_vacuum_pruned(variant, &mfock, step_min, step_max)
}

/// Quantum Cauchy–Binet with B = I:
/// Σ_L det X_L det Y_L = det(XY + Q) in the matching variant. The B = I and
/// pseudo-commutativity hypotheses are gated; violations are reported as
/// usage errors, never as a silent pass.
pub fn verify_cauchy_binet_quantum<R: TermView + std::fmt::Display>(
    r: &Realization<R>,
    variant: DetVariant,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    if !r.b_is_identity() {
        return Err(hypothesis_error(
            "B = I",
            "the quantum Cauchy–Binet form does not apply when B ≠ I",
        ));
    }
    let report = commutation_report(&r.x, &r.y, &r.a, &r.b)?;
    if !report.xy_relation.holds {
        return Err(hypothesis_error("[X,Y] = −A δ", &report.xy_relation));
    }
    match variant {
        DetVariant::Col => {
            if !report.x_row_pseudo_commutative.holds {
                return Err(hypothesis_error(
                    "X row-pseudo-commutative",
                    &report.x_row_pseudo_commutative,
                ));
            }
        }
        DetVariant::Row => {
            if !report.y_column_pseudo_commutative.holds {
                return Err(hypothesis_error(
                    "Y column-pseudo-commutative",
                    &report.y_column_pseudo_commutative,
                ));
            }
        }
        DetVariant::Sym => {
            return Err(AlgebraError::usage(
                "quantum Cauchy–Binet is stated for col and row variants",
            ))
        }
    }
    let lhs = cauchy_binet_lhs(variant, &r.x, &r.y)?;
    let xy = r.x.mat_mul(&r.y);
    let rhs = nc_det(variant, &xy.add(&q_correction(variant, &r.a)?))?;
    let mut params = r.params_string();
    params.insert("variant".to_string(), variant.to_string());
    Ok(compare_sides(
        "quantum_cauchy_binet",
        params,
        &lhs,
        &rhs,
        started,
    ))
}

/// Oscillator representation:
/// Σ_L col-det X_L col-det Y_L = ⟨0| col-det[aA + X(1−a†B)^{-1}Y] |0⟩ (col)
/// and the row mirror. The kernel truncation order defaults to n, which is
/// exact by count-difference conservation.
pub fn verify_oscillator_rep<R: TermView + std::fmt::Display>(
    r: &Realization<R>,
    variant: DetVariant,
    trunc: Option<usize>,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let report = commutation_report(&r.x, &r.y, &r.a, &r.b)?;
    if !report.xy_relation.holds {
        return Err(hypothesis_error("[X,Y] = −AB", &report.xy_relation));
    }
    if !report.b_central.holds {
        return Err(hypothesis_error("B central", &report.b_central));
    }
    match variant {
        DetVariant::Col => {
            if !report.x_row_pseudo_commutative.holds {
                return Err(hypothesis_error(
                    "X row-pseudo-commutative",
                    &report.x_row_pseudo_commutative,
                ));
            }
            if !report.xa_row_symmetric.holds {
                return Err(hypothesis_error(
                    "[X_ij,A_kl] − [X_kj,A_il] = 0",
                    &report.xa_row_symmetric,
                ));
            }
        }
        DetVariant::Row => {
            if !report.y_column_pseudo_commutative.holds {
                return Err(hypothesis_error(
                    "Y column-pseudo-commutative",
                    &report.y_column_pseudo_commutative,
                ));
            }
            if !report.ya_column_symmetric.holds {
                return Err(hypothesis_error(
                    "[Y_ij,A_kl] − [Y_il,A_kj] = 0",
                    &report.ya_column_symmetric,
                ));
            }
        }
        DetVariant::Sym => {
            return Err(AlgebraError::usage(
                "oscillator representation is stated for col and row variants",
            ))
        }
    }
    let trunc = trunc.unwrap_or(r.n);
    let lhs = cauchy_binet_lhs(variant, &r.x, &r.y)?;
    let rhs = oscillator_rhs(r, variant, trunc)?;
    let mut params = r.params_string();
    params.insert("variant".to_string(), variant.to_string());
    params.insert("trunc".to_string(), trunc.to_string());
    Ok(compare_sides(
        "oscillator_representation",
        params,
        &lhs,
        &rhs,
        started,
    ))
}
