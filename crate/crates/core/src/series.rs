//! Truncated formal power series in one oscillator variable, the
//! f(a)/g(a,s)/χ_h calculus, generalized s-binomials, and the specialized
//! Campbell–Baker–Hausdorff exponent.

use crate::error::AlgebraError;
use crate::fock::{FockElement, FockMonomial};
use crate::ring::{Rational, Ring};
use crate::scalars::ParamPoly;

/// Series Σ_{j=0..D} c_j a^j truncated at order D; the coefficient vector has
/// length exactly D+1. Binary operations never silently change D: results
/// carry the minimum of the operand truncations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has order ≥ 0");
        TruncSeries { coeffs }
    }

    /// Series from the low-order coefficients given, zero-padded to order D.
    pub fn from_poly(coeffs: &[R], order: usize) -> Self {
        let mut v: Vec<R> = coeffs.iter().take(order + 1).cloned().collect();
        while v.len() < order + 1 {
            v.push(R::zero());
        }
        TruncSeries { coeffs: v }
    }

    pub fn zero_series(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one_series(order: usize) -> Self {
        let mut s = TruncSeries::zero_series(order);
        s.coeffs[0] = R::one();
        s
    }

    /// The variable a itself.
    pub fn var(order: usize) -> Self {
        let mut s = TruncSeries::zero_series(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> R {
        self.coeffs.get(j).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn add(&self, rhs: &TruncSeries<R>) -> TruncSeries<R> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|j| self.coeffs[j].add(&rhs.coeffs[j]))
            .collect();
        TruncSeries { coeffs }
    }

    pub fn neg(&self) -> TruncSeries<R> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(R::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncSeries<R>) -> TruncSeries<R> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &TruncSeries<R>) -> TruncSeries<R> {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![R::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale(&self, c: &R) -> TruncSeries<R> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Coefficient-wise derivative, at the same truncation order. Exact when
    /// the series is a polynomial of degree < D.
    pub fn derivative(&self) -> TruncSeries<R> {
        let mut coeffs = vec![R::zero(); self.coeffs.len()];
        for j in 1..self.coeffs.len() {
            coeffs[j - 1] = self.coeffs[j].scale_int(j as i64);
        }
        TruncSeries { coeffs }
    }

    /// exp of a series with zero constant term: Σ_{k≤D} x^k/k!.
    pub fn exp(&self) -> Result<TruncSeries<R>, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::domain(
                "series exp needs a zero constant term",
            ));
        }
        let d = self.order();
        let mut sum = TruncSeries::one_series(d);
        let mut power = TruncSeries::one_series(d);
        let mut kfact: i64 = 1;
        for k in 1..=d {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            kfact *= k as i64;
            let term = power.try_div_int_all(kfact).ok_or_else(|| {
                AlgebraError::domain("series exp requires rational division in the coefficient ring")
            })?;
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// log of a series with constant term one:
    /// Σ_{k≥1} (−1)^{k+1} (f−1)^k / k.
    pub fn log(&self) -> Result<TruncSeries<R>, AlgebraError> {
        if self.coeffs[0] != R::one() {
            return Err(AlgebraError::domain("series log needs constant term 1"));
        }
        let d = self.order();
        let u = self.sub(&TruncSeries::one_series(d));
        let mut sum = TruncSeries::zero_series(d);
        let mut power = TruncSeries::one_series(d);
        for k in 1..=d {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            let signed = if k % 2 == 0 { power.neg() } else { power.clone() };
            let term = signed.try_div_int_all(k as i64).ok_or_else(|| {
                AlgebraError::domain("series log requires rational division in the coefficient ring")
            })?;
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    fn try_div_int_all(&self, n: i64) -> Option<TruncSeries<R>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.try_div_int(n)?);
        }
        Some(TruncSeries { coeffs })
    }

    /// Σ_j c_j a^j as a normal-ordered Fock element.
    pub fn to_fock_annihilation(&self) -> FockElement<R> {
        FockElement::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (FockMonomial::new(0, j as u32), c.clone())),
        )
    }

    /// Σ_j c_j (a†)^j as a normal-ordered Fock element.
    pub fn to_fock_creation(&self) -> FockElement<R> {
        FockElement::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (FockMonomial::new(j as u32, 0), c.clone())),
        )
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncSeries<Rational> {
    /// Lift a rational series into the parameter ring.
    pub fn lift(&self) -> TruncSeries<ParamPoly> {
        self.map_coeffs(|c| ParamPoly::constant_rational(c.clone()))
    }
}

/// f^σ = exp(σ · log f) for a symbolic exponent σ; needs f(0) = 1 so that
/// log f exists. Coefficients of the result are polynomials in σ's
/// parameters.
pub fn ts_pow_param(
    f: &TruncSeries<ParamPoly>,
    sigma: &ParamPoly,
) -> Result<TruncSeries<ParamPoly>, AlgebraError> {
    if f.coeff(0) != ParamPoly::one() {
        return Err(AlgebraError::domain("ts_pow_param needs f(0) = 1"));
    }
    let logf = f.log()?;
    logf.scale(sigma).exp()
}

/// The generalized s-binomial binom(ℓ, h)_s = (1/h!) ℓ(ℓ−s)⋯(ℓ−(h−1)s).
pub fn binom_s(ell: &ParamPoly, h: usize, s: &ParamPoly) -> ParamPoly {
    let mut acc = ParamPoly::one();
    for j in 0..h {
        acc = acc.mul(&ell.sub(&s.scale_int(j as i64)));
    }
    let hfact: i64 = (1..=h as i64).product();
    acc.try_div_int(hfact.max(1)).expect("rational division")
}

/// g(a, s) = s [∂/∂a f(a)^{−s}]^{−1} = −[f′(a)]^{−1} f(a)^{s+1}, computed
/// from the second (explicit) form. Needs f(0) = 1 and f′(0) invertible
/// (a nonzero rational constant).
pub fn g_from_f(
    f: &TruncSeries<ParamPoly>,
    s: &ParamPoly,
) -> Result<TruncSeries<ParamPoly>, AlgebraError> {
    let fp = f.derivative();
    let fp_inv = invert_series(&fp)?;
    let fs1 = ts_pow_param(f, &s.add(&ParamPoly::one()))?;
    Ok(fp_inv.mul(&fs1).neg())
}

/// Invert a series whose constant term is a nonzero rational constant.
pub fn invert_series(
    f: &TruncSeries<ParamPoly>,
) -> Result<TruncSeries<ParamPoly>, AlgebraError> {
    let c0 = f
        .coeff(0)
        .as_rational()
        .filter(|c| !Ring::is_zero(c))
        .ok_or_else(|| {
            AlgebraError::domain("series inversion needs a nonzero rational constant term")
        })?;
    let d = f.order();
    let u = ParamPoly::constant_rational(Rational::one() / c0);
    let mut inv = vec![ParamPoly::zero(); d + 1];
    inv[0] = u.clone();
    for n in 1..=d {
        let mut acc = ParamPoly::zero();
        for k in 1..=n {
            acc = acc.add(&f.coeff(k).mul(&inv[n - k]));
        }
        inv[n] = acc.mul(&u).neg();
    }
    Ok(TruncSeries::new(inv))
}

/// χ_h(a, a†) = (1/h!) (a† g(a,s))^h f(a)^{−sh−1}, normal-ordered and
/// truncated at annihilation degree D. Monomials carry at most h creation
/// letters (exactly h before normal-ordering contractions).
pub fn chi_h_operator(
    f: &TruncSeries<ParamPoly>,
    s: &ParamPoly,
    h: usize,
    d: usize,
) -> Result<FockElement<ParamPoly>, AlgebraError> {
    let f = resize(f, d);
    let g = g_from_f(&f, s)?;
    let g_fock = g.to_fock_annihilation();
    let adag: FockElement<ParamPoly> = FockElement::creation(1);
    let mut acc: FockElement<ParamPoly> = FockElement::one();
    for _ in 0..h {
        acc = acc.mul_trunc(&adag, d as u32);
        acc = acc.mul_trunc(&g_fock, d as u32);
    }
    let sh = s.scale_int(h as i64);
    let exponent = sh.neg().sub(&ParamPoly::one()); // −sh − 1
    let tail = ts_pow_param(&f, &exponent)?.to_fock_annihilation();
    let prod = acc.mul_trunc(&tail, d as u32);
    let hfact: i64 = (1..=h as i64).product();
    prod.try_div_int(hfact.max(1))
        .ok_or_else(|| AlgebraError::domain("chi_h requires rational division"))
}

fn resize(f: &TruncSeries<ParamPoly>, d: usize) -> TruncSeries<ParamPoly> {
    TruncSeries::from_poly(f.coeffs(), d)
}

/// The corrected CBH exponent Σ_{k=0}^{deg f} c^k/(k+1)! (∂^k f)(a) as a
/// series truncated at order `order`. Exact for polynomial f: the sum
/// terminates at k = deg f.
pub fn cbh_rhs<R: Ring>(
    f: &TruncSeries<R>,
    c: &R,
    order: usize,
) -> Result<TruncSeries<R>, AlgebraError> {
    let deg = (0..=f.order())
        .rev()
        .find(|&j| !f.coeff(j).is_zero())
        .unwrap_or(0);
    let mut acc = TruncSeries::zero_series(order);
    let mut deriv = TruncSeries::from_poly(f.coeffs(), order.max(f.order()));
    let mut c_pow = R::one();
    let mut kp1_fact: i64 = 1;
    for k in 0..=deg {
        if k > 0 {
            deriv = deriv.derivative();
            c_pow = c_pow.mul(c);
        }
        kp1_fact = kp1_fact
            .checked_mul(if k == 0 { 1 } else { (k + 1) as i64 })
            .expect("factorial overflow");
        let term = TruncSeries::from_poly(deriv.coeffs(), order)
            .scale(&c_pow)
            .try_div_int_all(kp1_fact)
            .ok_or_else(|| AlgebraError::domain("cbh_rhs requires rational division"))?;
        acc = acc.add(&term);
    }
    Ok(acc)
}
