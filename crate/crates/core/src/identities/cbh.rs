//! Order-by-order verification of the specialized Campbell–Baker–Hausdorff
//! identities
//!   exp(c a† + f(a)) = exp(c a†) exp(Σ_k c^k/(k+1)! (∂^k f)(a))
//! and its conjugate
//!   exp(c a + f(a†)) = exp(Σ_k c^k/(k+1)! (∂^k f)(a†)) exp(c a),
//! with c symbolic and a grading variable t multiplying both summands.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::AlgebraError;
use crate::fock::{FockElement, FockMonomial};
use crate::ring::{Rational, Ring};
use crate::scalars::{ParamPoly, ParamSet};
use crate::series::{cbh_rhs, TruncSeries};

use super::{combine_results, compare_sides, VerificationResult};

type Fk = FockElement<ParamPoly>;

/// Series in the grading variable t with one Fock-element coefficient per
/// order; index N holds the coefficient of t^N.
fn graded(order: usize, entries: Vec<(usize, Fk)>) -> TruncSeries<Fk> {
    let mut coeffs = vec![Fk::zero(); order + 1];
    for (n, c) in entries {
        if n <= order {
            coeffs[n] = coeffs[n].add(&c);
        }
    }
    TruncSeries::new(coeffs)
}

/// exp(t·X) order by order up to t^K.
fn exp_graded(x: &Fk, order: usize) -> Result<TruncSeries<Fk>, AlgebraError> {
    graded(order, vec![(1, x.clone())]).exp()
}

fn deriv_coeffs(f: &TruncSeries<Rational>) -> Vec<TruncSeries<Rational>> {
    // f, f', f'', … down to the zero series
    let mut out = vec![f.clone()];
    loop {
        let d = out.last().unwrap().derivative();
        if d.is_zero() {
            break;
        }
        out.push(d);
    }
    out
}

/// Compare both CBH forms at every t-order up to K. Each order is a finite
/// normal-ordered Fock comparison with coefficients polynomial in c.
pub fn verify_cbh(
    f: &TruncSeries<Rational>,
    k_order: usize,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    if k_order == 0 {
        return Err(AlgebraError::usage("cbh needs a grading order K ≥ 1"));
    }
    let pset = ParamSet::declare(["c"]);
    let c = pset.var("c");
    let f_p: TruncSeries<ParamPoly> = f.lift();
    let derivs = deriv_coeffs(f);

    let mut parts = Vec::new();

    // the corrected exponent, graded: t^{k+1} ↦ c^k/(k+1)! (∂^k f)
    let exponent_entries = |creation_side: bool| -> Result<Vec<(usize, Fk)>, AlgebraError> {
        let mut entries = Vec::new();
        let mut c_pow = ParamPoly::one();
        let mut kp1_fact: i64 = 1;
        for (k, dk) in derivs.iter().enumerate() {
            if k > 0 {
                c_pow = c_pow.mul(&c);
                kp1_fact *= (k + 1) as i64;
            }
            let dk_p = dk.lift();
            let fock = if creation_side {
                dk_p.to_fock_creation()
            } else {
                dk_p.to_fock_annihilation()
            };
            let scaled = fock
                .map_coeffs(|x| x.mul(&c_pow))
                .try_div_int(kp1_fact)
                .ok_or_else(|| AlgebraError::domain("cbh requires rational division"))?;
            entries.push((k + 1, scaled));
        }
        Ok(entries)
    };

    // direct form: exp(t(c a† + f(a)))
    {
        let x = Fk::from_terms([(FockMonomial::new(1, 0), c.clone())])
            .add(&f_p.to_fock_annihilation());
        let lhs = exp_graded(&x, k_order)?;
        let c_adag = Fk::from_terms([(FockMonomial::new(1, 0), c.clone())]);
        let left_factor = exp_graded(&c_adag, k_order)?;
        let corrected = graded(k_order, exponent_entries(false)?).exp()?;
        let rhs = left_factor.mul(&corrected);
        for order in 0..=k_order {
            let mut params = BTreeMap::new();
            params.insert("t_order".to_string(), order.to_string());
            params.insert("form".to_string(), "direct".to_string());
            parts.push(compare_sides(
                "cbh",
                params,
                &lhs.coeff(order),
                &rhs.coeff(order),
                started,
            ));
        }
    }

    // conjugated form: exp(t(c a + f(a†)))
    {
        let x = Fk::from_terms([(FockMonomial::new(0, 1), c.clone())])
            .add(&f_p.to_fock_creation());
        let lhs = exp_graded(&x, k_order)?;
        let c_a = Fk::from_terms([(FockMonomial::new(0, 1), c.clone())]);
        let right_factor = exp_graded(&c_a, k_order)?;
        let corrected = graded(k_order, exponent_entries(true)?).exp()?;
        let rhs = corrected.mul(&right_factor);
        for order in 0..=k_order {
            let mut params = BTreeMap::new();
            params.insert("t_order".to_string(), order.to_string());
            params.insert("form".to_string(), "conjugated".to_string());
            parts.push(compare_sides(
                "cbh",
                params,
                &lhs.coeff(order),
                &rhs.coeff(order),
                started,
            ));
        }
    }

    // the graded exponent collapses to the cbh_rhs series at t = 1
    {
        let collapsed: Fk = exponent_entries(false)?
            .into_iter()
            .fold(Fk::zero(), |acc, (_, e)| acc.add(&e));
        let direct = cbh_rhs(&f_p, &c, f.order())?.to_fock_annihilation();
        let mut params = BTreeMap::new();
        params.insert("form".to_string(), "exponent_vs_cbh_rhs".to_string());
        parts.push(compare_sides("cbh", params, &collapsed, &direct, started));
    }

    let mut params = BTreeMap::new();
    params.insert("K".to_string(), k_order.to_string());
    params.insert(
        "f".to_string(),
        f.coeffs()
            .iter()
            .map(crate::ring::rational_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    Ok(combine_results("cbh", params, parts, started))
}
