//! Concrete realizations of the commutation hypotheses and mechanical
//! verifiers for the Cauchy–Binet/Capelli identities in their quantum
//! (Fock), holomorphic and Grassmann representations.
//!
//! Every verifier is total: it never asserts internally. Failures are data —
//! the structured result carries the first discrepant normal-form term for
//! triage. Hypothesis violations surface as usage errors naming the violated
//! predicate, never as a silent pass.

mod calibration;
mod cbh;
mod direct_grassmann;
mod grassmann_rep;
mod holomorphic;
mod oscillator;
mod substitution;
mod support;

#[cfg(test)]
mod tests;

pub use calibration::{
    det_cofactor, verify_berezin_calibration, verify_lukasiewicz_agreement,
    verify_oracle_independence,
};
pub use cbh::verify_cbh;
pub use direct_grassmann::verify_direct_grassmann;
pub use grassmann_rep::{grassmann_rhs, verify_grassmann_rep};
pub use holomorphic::{holomorphic_rhs, verify_holomorphic_coldet};
pub use oscillator::{oscillator_rhs, verify_cauchy_binet_quantum, verify_oscillator_rep};
pub use substitution::{
    verify_lem_faf, verify_multilin, verify_prop_old, verify_substitution, DetRng,
    SubstitutionKind,
};
pub use support::verify_support_lemmas;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::error::AlgebraError;
use crate::free_algebra::{Alphabet, FreePoly};
use crate::ncdet::NCMatrix;
use crate::ring::{Rational, Ring, TermView};
use crate::scalars::{ParamPoly, ParamSet};
use crate::weyl::{WeylAlgebra, WeylElement};

/// Provenance of a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationTag {
    Capelli,
    WeylExample,
    Free,
}

impl fmt::Display for RealizationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationTag::Capelli => write!(f, "capelli"),
            RealizationTag::WeylExample => write!(f, "weyl_example"),
            RealizationTag::Free => write!(f, "free"),
        }
    }
}

/// A concrete assignment of the matrices X (n×m), Y (m×n), A (n×n), B (m×m)
/// in an explicit ring.
#[derive(Clone, Debug)]
pub struct Realization<R: Ring> {
    pub tag: RealizationTag,
    pub n: usize,
    pub m: usize,
    pub s_dim: usize,
    pub x: NCMatrix<R>,
    pub y: NCMatrix<R>,
    pub a: NCMatrix<R>,
    pub b: NCMatrix<R>,
}

impl<R: Ring> Realization<R> {
    /// True when B is the identity matrix.
    pub fn b_is_identity(&self) -> bool {
        self.b == NCMatrix::identity(self.m)
    }

    pub fn params_string(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("realization".to_string(), self.tag.to_string());
        p.insert("n".to_string(), self.n.to_string());
        p.insert("m".to_string(), self.m.to_string());
        if self.tag == RealizationTag::WeylExample {
            p.insert("s_dim".to_string(), self.s_dim.to_string());
        }
        p
    }
}

/// The classical realization: positions Zᵀ against derivatives ∂ on an n×n
/// grid, with A = B = I.
pub fn realize_capelli(n: usize) -> Realization<WeylElement> {
    assert!(n >= 1, "capelli realization needs n ≥ 1");
    let algebra = WeylAlgebra::new(n, n, ParamSet::empty());
    let x = NCMatrix::from_fn(n, n, |i, j| algebra.z(j, i));
    let y = NCMatrix::from_fn(n, n, |k, l| algebra.d(k, l));
    let a = weyl_identity(&algebra, n);
    let b = weyl_identity(&algebra, n);
    Realization {
        tag: RealizationTag::Capelli,
        n,
        m: n,
        s_dim: n,
        x,
        y,
        a,
        b,
    }
}

/// X_ij = Σ_a z_i^a α_j^a, Y_kℓ = Σ_a β_k^a ∂_ℓ^a with fully symbolic α, β;
/// A = I and B_kj = Σ_a β_k^a α_j^a, of rank min(m, s_dim).
pub fn realize_weyl_example(
    n: usize,
    m: usize,
    s_dim: usize,
) -> Result<Realization<WeylElement>, AlgebraError> {
    if n > m {
        return Err(AlgebraError::usage("weyl_example realization needs n ≤ m"));
    }
    if n == 0 || s_dim == 0 {
        return Err(AlgebraError::usage("weyl_example realization needs n, s_dim ≥ 1"));
    }
    let mut names = Vec::new();
    for j in 1..=m {
        for a in 1..=s_dim {
            names.push(alpha_name(j, a));
        }
    }
    for k in 1..=m {
        for a in 1..=s_dim {
            names.push(beta_name(k, a));
        }
    }
    let params = ParamSet::declare(names);
    let algebra = WeylAlgebra::new(n, s_dim, params.clone());

    let alpha = |j: usize, a: usize| params.var(&alpha_name(j, a));
    let beta = |k: usize, a: usize| params.var(&beta_name(k, a));

    let x = NCMatrix::from_fn(n, m, |i, j| {
        let mut acc = WeylElement::zero();
        for a in 0..s_dim {
            acc = acc.add(&algebra.z(i, a).mul(&algebra.scalar(alpha(j + 1, a + 1))));
        }
        acc
    });
    let y = NCMatrix::from_fn(m, n, |k, l| {
        let mut acc = WeylElement::zero();
        for a in 0..s_dim {
            acc = acc.add(&algebra.scalar(beta(k + 1, a + 1)).mul(&algebra.d(l, a)));
        }
        acc
    });
    let a_mat = weyl_identity(&algebra, n);
    let b = NCMatrix::from_fn(m, m, |k, j| {
        let mut acc = ParamPoly::zero();
        for a in 0..s_dim {
            acc = acc.add(&beta(k + 1, a + 1).mul(&alpha(j + 1, a + 1)));
        }
        algebra.scalar(acc)
    });
    Ok(Realization {
        tag: RealizationTag::WeylExample,
        n,
        m,
        s_dim,
        x,
        y,
        a: a_mat,
        b,
    })
}

/// Matrices of pairwise-distinct free generators with A = B = I: satisfies
/// none of the commutation hypotheses and exists to exercise the gates and
/// the witness reporting.
pub fn realize_free(n: usize, m: usize) -> Realization<FreePoly<Rational>> {
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            names.push(format!("X_{i}{j}"));
        }
    }
    for k in 1..=m {
        for l in 1..=n {
            names.push(format!("Y_{k}{l}"));
        }
    }
    let alphabet = Alphabet::declare(names);
    let x = NCMatrix::from_fn(n, m, |i, j| alphabet.gen((i * m + j) as u32));
    let y = NCMatrix::from_fn(m, n, |k, l| alphabet.gen((n * m + k * n + l) as u32));
    Realization {
        tag: RealizationTag::Free,
        n,
        m,
        s_dim: 0,
        x,
        y,
        a: NCMatrix::identity(n),
        b: NCMatrix::identity(m),
    }
}

fn alpha_name(j: usize, a: usize) -> String {
    format!("α_{j}^{a}")
}

fn beta_name(k: usize, a: usize) -> String {
    format!("β_{k}^{a}")
}

fn weyl_identity(algebra: &WeylAlgebra, n: usize) -> NCMatrix<WeylElement> {
    NCMatrix::from_fn(n, n, |i, j| {
        if i == j {
            algebra.scalar(ParamPoly::one())
        } else {
            WeylElement::zero()
        }
    })
}

/// Pass/fail status of one verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
        }
    }
}

/// Structured outcome of one identity verification. `status` is pass exactly
/// when the lhs − rhs normal form is identically zero.
#[derive(Clone, Debug)]
pub struct VerificationResult {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub first_discrepancy: Option<String>,
    pub elapsed: Duration,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(
            f,
            "[{}] {} ({params}) lhs_terms={} rhs_terms={} {:.1}ms",
            self.status,
            self.identity,
            self.lhs_terms,
            self.rhs_terms,
            self.elapsed.as_secs_f64() * 1e3
        )?;
        if let Some(d) = &self.first_discrepancy {
            write!(f, " first_discrepancy: {d}")?;
        }
        Ok(())
    }
}

/// Compare two ring elements and package the outcome.
pub(crate) fn compare_sides<R: TermView>(
    identity: &str,
    params: BTreeMap<String, String>,
    lhs: &R,
    rhs: &R,
    started: Instant,
) -> VerificationResult {
    let diff = lhs.sub(rhs);
    let status = if diff.is_zero() {
        Status::Pass
    } else {
        Status::Fail
    };
    VerificationResult {
        identity: identity.to_string(),
        params,
        status,
        lhs_terms: lhs.term_count(),
        rhs_terms: rhs.term_count(),
        first_discrepancy: diff.first_term(),
        elapsed: started.elapsed(),
    }
}

/// Combine an aggregate of sub-checks (first failure wins) into one result.
pub(crate) fn combine_results(
    identity: &str,
    params: BTreeMap<String, String>,
    parts: Vec<VerificationResult>,
    started: Instant,
) -> VerificationResult {
    let lhs_terms = parts.iter().map(|r| r.lhs_terms).sum();
    let rhs_terms = parts.iter().map(|r| r.rhs_terms).sum();
    let first_fail = parts.iter().find(|r| !r.passed());
    VerificationResult {
        identity: identity.to_string(),
        params,
        status: if first_fail.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        lhs_terms,
        rhs_terms,
        first_discrepancy: first_fail.and_then(|r| {
            r.first_discrepancy
                .clone()
                .map(|d| format!("{}: {d}", r.identity))
        }),
        elapsed: started.elapsed(),
    }
}

pub(crate) fn hypothesis_error(name: &str, detail: impl fmt::Display) -> AlgebraError {
    AlgebraError::usage(format!("hypothesis violated: {name} ({detail})"))
}

/// Cross-representation coherence: on a realization passing the column-variant
/// gates, the oscillator RHS, the Grassmann RHS and (when B = I) the quantum
/// Cauchy–Binet RHS must agree pairwise, independently of the shared LHS.
pub fn verify_cross_representation(
    r: &Realization<WeylElement>,
) -> Result<VerificationResult, AlgebraError> {
    use crate::ncdet::{nc_det, q_correction, DetVariant};

    let started = Instant::now();
    let osc = oscillator_rhs(r, DetVariant::Col, r.n)?;
    let gr = grassmann_rhs(r, DetVariant::Col)?;
    let holo = holomorphic_rhs(r)?;
    let mut parts = vec![
        compare_sides(
            "oscillator_vs_grassmann",
            BTreeMap::new(),
            &osc,
            &gr,
            started,
        ),
        compare_sides(
            "oscillator_vs_holomorphic",
            BTreeMap::new(),
            &osc,
            &holo,
            started,
        ),
    ];
    if r.b_is_identity() {
        let xy = r.x.mat_mul(&r.y);
        let q = q_correction(DetVariant::Col, &r.a)?;
        let quantum = nc_det(DetVariant::Col, &xy.add(&q))?;
        parts.push(compare_sides(
            "oscillator_vs_quantum_cb",
            BTreeMap::new(),
            &osc,
            &quantum,
            started,
        ));
    }
    Ok(combine_results(
        "cross_representation",
        r.params_string(),
        parts,
        started,
    ))
}
