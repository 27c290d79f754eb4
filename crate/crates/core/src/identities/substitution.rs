//! Substitutional identities: the B = I oscillator form for arbitrary free
//! matrices, its multilinear generalization through the χ_h calculus, and
//! the C_{ℓ,h,m} vacuum-weight lemma.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::AlgebraError;
use crate::fock::{FockElement, FockMonomial};
use crate::free_algebra::{Alphabet, FreePoly, FreeWord};
use crate::ncdet::{nc_det, q_correction, DetVariant, NCMatrix};
use crate::ring::{Rational, Ring};
use crate::scalars::{ParamPoly, ParamSet};
use crate::series::{binom_s, chi_h_operator, g_from_f, ts_pow_param, TruncSeries};

use super::oscillator::det_vacuum_pruned;
use super::{combine_results, compare_sides, VerificationResult};

/// Deterministic xorshift* generator for reproducible random coefficients.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed.wrapping_mul(0x9E3779B97F4A7C15).max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Which substitutional identity to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstitutionKind {
    PropOld,
    Multilin,
    LemFaf,
}

/// Single entry point over the three substitutional identities. PropOld uses
/// only `n`; Multilin uses everything; LemFaf uses `f` with the h ≤ k,
/// m ≤ n bounds.
pub fn verify_substitution(
    kind: SubstitutionKind,
    n: usize,
    k: usize,
    f: &TruncSeries<Rational>,
    s_value: Option<Rational>,
    seed: u64,
) -> Result<VerificationResult, AlgebraError> {
    match kind {
        SubstitutionKind::PropOld => verify_prop_old(n),
        SubstitutionKind::Multilin => verify_multilin(n, k, f, s_value, seed),
        SubstitutionKind::LemFaf => verify_lem_faf(f, k, n as u32),
    }
}

/// col-det(U + Q^col(V)) = ⟨0| col-det(aV + (1−a†)^{-1}U) |0⟩ and the row
/// mirror, for matrices U, V of distinct free generators — no commutation
/// hypotheses at all.
pub fn verify_prop_old(n: usize) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("U_{i}{j}"));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("V_{i}{j}"));
        }
    }
    let alphabet = Alphabet::declare(names);
    let u = NCMatrix::from_fn(n, n, |i, j| alphabet.gen::<Rational>((i * n + j) as u32));
    let v = NCMatrix::from_fn(n, n, |i, j| {
        alphabet.gen::<Rational>((n * n + i * n + j) as u32)
    });

    let mut parts = Vec::new();
    for variant in [DetVariant::Col, DetVariant::Row] {
        let lhs = nc_det(variant, &u.add(&q_correction(variant, &v)?))?;
        let mfock: NCMatrix<FockElement<FreePoly<Rational>>> = NCMatrix::from_fn(n, n, |i, j| {
            let mut entry = FockElement::from_terms([(
                match variant {
                    DetVariant::Col => FockMonomial::new(0, 1),
                    DetVariant::Row => FockMonomial::new(1, 0),
                    DetVariant::Sym => unreachable!(),
                },
                v.get(i, j).clone(),
            )]);
            for nu in 0..=n as u32 {
                let mono = match variant {
                    DetVariant::Col => FockMonomial::new(nu, 0),
                    DetVariant::Row => FockMonomial::new(0, nu),
                    DetVariant::Sym => unreachable!(),
                };
                entry = entry.add(&FockElement::from_terms([(mono, u.get(i, j).clone())]));
            }
            entry
        });
        let (step_min, step_max) = match variant {
            DetVariant::Col => (-1, n as i64),
            DetVariant::Row => (-(n as i64), 1),
            DetVariant::Sym => unreachable!(),
        };
        let rhs = det_vacuum_pruned(variant, &mfock, step_min, step_max)?;
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), n.to_string());
        params.insert("variant".to_string(), variant.to_string());
        parts.push(compare_sides("prop_old", params, &lhs, &rhs, started));
    }
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    Ok(combine_results("prop_old", params, parts, started))
}

/// φ({y_ij}) = ⟨0| φ({z_ij}) |0⟩ for a pseudo-random ordered-multilinear φ
/// with rational coefficients, y_ij = Σ_h binom(i−1,h)_s x^{(h)}_ij and
/// z_ij = Σ_h χ_h x^{(h)}_ij. The oscillator side is truncated at
/// annihilation degree n·k, which is exact.
pub fn verify_multilin(
    n: usize,
    k: usize,
    f: &TruncSeries<Rational>,
    s_value: Option<Rational>,
    seed: u64,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let m_cols = 2usize; // column choices per row
    let pset = ParamSet::declare(["s"]);
    let s_poly = match &s_value {
        Some(r) => pset.constant(r.clone()),
        None => pset.var("s"),
    };
    let d = (n * k).max(1);
    let f_lift = TruncSeries::from_poly(f.lift().coeffs(), d);

    // alphabet of the x^{(h)}_{ij}
    let mut names = Vec::new();
    for h in 0..=k {
        for i in 1..=n {
            for j in 1..=m_cols {
                names.push(format!("x^({h})_{i}{j}"));
            }
        }
    }
    let alphabet = Alphabet::declare(names);
    let gen_id = |h: usize, i: usize, j: usize| (h * n * m_cols + i * m_cols + j) as u32;

    // χ_h operators with FreePoly-lifted coefficients
    let mut chis = Vec::with_capacity(k + 1);
    for h in 0..=k {
        chis.push(chi_h_operator(&f_lift, &s_poly, h, d)?);
    }

    // i0, j0 are 0-based; the multiplier of x^{(h)} on row i (1-based) is
    // binom(i−1, h)_s = binom(i0, h)_s
    let y = |i0: usize, j0: usize| -> FreePoly<ParamPoly> {
        let mut acc = FreePoly::zero();
        for h in 0..=k {
            let coeff = binom_s(&ParamPoly::from_int(i0 as i64), h, &s_poly);
            acc = acc.add(&FreePoly::from_terms(
                alphabet.clone(),
                [(FreeWord(vec![gen_id(h, i0, j0)]), coeff)],
            ));
        }
        acc
    };
    let z = |i0: usize, j0: usize| -> FockElement<FreePoly<ParamPoly>> {
        let mut acc = FockElement::zero();
        for (h, chi) in chis.iter().enumerate() {
            let lifted = chi.map_coeffs(|c| {
                FreePoly::from_terms(
                    alphabet.clone(),
                    [(FreeWord(vec![gen_id(h, i0, j0)]), c.clone())],
                )
            });
            acc = acc.add(&lifted);
        }
        acc
    };

    // pseudo-random multilinear φ over the full monomial basis
    let mut rng = DetRng::new(seed);
    let mut monomials: Vec<(Vec<usize>, Rational)> = Vec::new();
    let mut j_choice = vec![0usize; n];
    loop {
        let c = rng.int_in(-3, 3);
        if c != 0 {
            monomials.push((j_choice.clone(), Rational::from_int(c)));
        }
        let mut t = 0;
        while t < n {
            if j_choice[t] + 1 < m_cols {
                j_choice[t] += 1;
                break;
            }
            j_choice[t] = 0;
            t += 1;
        }
        if t == n {
            break;
        }
    }

    let mut lhs: FreePoly<ParamPoly> = FreePoly::zero();
    let mut rhs: FreePoly<ParamPoly> = FreePoly::zero();
    for (j_sel, c) in &monomials {
        let mut y_prod: FreePoly<ParamPoly> = FreePoly::one();
        let mut z_prod: FockElement<FreePoly<ParamPoly>> = FockElement::one();
        for (i0, &j0) in j_sel.iter().enumerate() {
            y_prod = y_prod.mul(&y(i0, j0));
            z_prod = z_prod.mul_trunc(&z(i0, j0), d as u32);
        }
        let scale = ParamPoly::constant_rational(c.clone());
        lhs = lhs.add(&y_prod.map_coeffs(|p| p.mul(&scale)));
        rhs = rhs.add(&z_prod.vacuum_expectation().map_coeffs(|p| p.mul(&scale)));
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("k".to_string(), k.to_string());
    params.insert(
        "s".to_string(),
        s_value
            .map(|r| crate::ring::rational_string(&r))
            .unwrap_or_else(|| "symbolic".to_string()),
    );
    params.insert("phi_monomials".to_string(), monomials.len().to_string());
    Ok(compare_sides("multilin", params, &lhs, &rhs, started))
}

/// C_{ℓ,h,m} = (1/h!) ⟨0| f^{−ℓ} (a†g)^h f^{ℓ−hs} |m⟩ = binom(ℓ,h)_s δ_{m,0}
/// with ℓ and s symbolic, for all h ≤ h_max, m ≤ m_max.
pub fn verify_lem_faf(
    f: &TruncSeries<Rational>,
    h_max: usize,
    m_max: u32,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let pset = ParamSet::declare(["l", "s"]);
    let ell = pset.var("l");
    let s = pset.var("s");
    let mut parts = Vec::new();
    for h in 0..=h_max {
        for m in 0..=m_max {
            let d = (h + m as usize).max(1);
            let f_d = TruncSeries::from_poly(f.lift().coeffs(), d);
            let left = ts_pow_param(&f_d, &ell.neg())?.to_fock_annihilation();
            let g = g_from_f(&f_d, &s)?.to_fock_annihilation();
            let right = ts_pow_param(&f_d, &ell.sub(&s.scale_int(h as i64)))?
                .to_fock_annihilation();
            let mut w = left;
            for _ in 0..h {
                w = w.mul_trunc(&FockElement::creation(1), d as u32);
                w = w.mul_trunc(&g, d as u32);
            }
            w = w.mul_trunc(&right, d as u32);
            let hfact: i64 = (1..=h as i64).product::<i64>().max(1);
            let got = w
                .matrix_element(0, m)
                .try_div_int(hfact)
                .ok_or_else(|| AlgebraError::domain("lem_faf requires rational division"))?;
            let want = if m == 0 {
                binom_s(&ell, h, &s)
            } else {
                ParamPoly::zero()
            };
            let mut params = BTreeMap::new();
            params.insert("h".to_string(), h.to_string());
            params.insert("m".to_string(), m.to_string());
            parts.push(compare_sides("lem_faf", params, &got, &want, started));
        }
    }
    let mut params = BTreeMap::new();
    params.insert("h_max".to_string(), h_max.to_string());
    params.insert("m_max".to_string(), m_max.to_string());
    Ok(combine_results("lem_faf", params, parts, started))
}
