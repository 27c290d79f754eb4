//! Single-mode Weyl–Heisenberg algebra in normal-ordered form, with
//! vacuum/matrix-element evaluation and the holomorphic (coherent-state)
//! Gaussian moment rule.
//!
//! Normalization: (a†)^n |m⟩ = |m+n⟩, a^n |m⟩ = m!/(m−n)! |m−n⟩, so that
//! ⟨n|m⟩ = n! δ_nm and ⟨0|0⟩ = 1. Coefficient-ring elements are central with
//! respect to a and a† by construction: the type never interleaves ring
//! factors between oscillator letters.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::ring::{binomial, factorial, falling, Rational, Ring, TermView};

/// Normal-ordered monomial (a†)^creation a^annihilation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FockMonomial {
    pub creation: u32,
    pub annihilation: u32,
}

impl FockMonomial {
    pub fn new(creation: u32, annihilation: u32) -> Self {
        FockMonomial {
            creation,
            annihilation,
        }
    }

    /// Creation count minus annihilation count; conserved by multiplication.
    pub fn count_difference(&self) -> i64 {
        self.creation as i64 - self.annihilation as i64
    }
}

/// Element of the Weyl–Heisenberg algebra with coefficients in a client ring
/// R whose elements commute with a and a†. Always stored normal-ordered
/// (creators left of annihilators) with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockElement<R: Ring> {
    terms: BTreeMap<FockMonomial, R>,
}

/// One oscillator letter; words of letters feed the independent ladder oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Create,
    Annihilate,
}

impl<R: Ring> FockElement<R> {
    pub fn from_terms(terms: impl IntoIterator<Item = (FockMonomial, R)>) -> Self {
        let mut map: BTreeMap<FockMonomial, R> = BTreeMap::new();
        for (m, c) in terms {
            let entry = map.entry(m).or_insert_with(R::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        FockElement { terms: map }
    }

    pub fn scalar(c: R) -> Self {
        FockElement::from_terms([(FockMonomial::new(0, 0), c)])
    }

    /// (a†)^k
    pub fn creation(k: u32) -> Self {
        FockElement::from_terms([(FockMonomial::new(k, 0), R::one())])
    }

    /// a^l
    pub fn annihilation(l: u32) -> Self {
        FockElement::from_terms([(FockMonomial::new(0, l), R::one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: FockMonomial) -> R {
        self.terms.get(&m).cloned().unwrap_or_else(R::zero)
    }

    /// Largest annihilation power appearing, 0 for the zero element.
    pub fn max_annihilation(&self) -> u32 {
        self.terms.keys().map(|m| m.annihilation).max().unwrap_or(0)
    }

    /// Largest creation power appearing, 0 for the zero element.
    pub fn max_creation(&self) -> u32 {
        self.terms.keys().map(|m| m.creation).max().unwrap_or(0)
    }

    /// Normal-ordered product. The rearrangement uses
    /// a^l (a†)^k = Σ_j C(l,j) C(k,j) j! (a†)^{k−j} a^{l−j},
    /// the closure of the single swap a a† = a†a + 1.
    pub fn mul_full(&self, rhs: &FockElement<R>) -> FockElement<R> {
        self.mul_with_cap(rhs, None)
    }

    /// Normal-ordered product with terms of annihilation power > cap dropped.
    /// Exact for vacuum-style evaluations when cap bounds the creation
    /// letters still to come (count-difference conservation).
    pub fn mul_trunc(&self, rhs: &FockElement<R>, cap: u32) -> FockElement<R> {
        self.mul_with_cap(rhs, Some(cap))
    }

    /// Product restricted to term pairs whose combined count difference lies
    /// in [dmin, dmax]. Count difference is conserved by normal ordering, so
    /// the window prunes unreachable terms before any coefficient arithmetic.
    pub fn mul_diff_window(&self, rhs: &FockElement<R>, dmin: i64, dmax: i64) -> FockElement<R> {
        let mut terms: BTreeMap<FockMonomial, R> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let d = ma.count_difference() + mb.count_difference();
                if d < dmin || d > dmax {
                    continue;
                }
                let coeff = ca.mul(cb);
                if coeff.is_zero() {
                    continue;
                }
                let l = ma.annihilation;
                let k = mb.creation;
                for j in 0..=l.min(k) {
                    let factor = binomial(l, j) * binomial(k, j) * {
                        let mut f: u128 = 1;
                        for t in 1..=j as u128 {
                            f *= t;
                        }
                        f
                    };
                    let mono =
                        FockMonomial::new(ma.creation + k - j, l - j + mb.annihilation);
                    let c = coeff.scale_int(factor as i64);
                    let entry = terms.entry(mono).or_insert_with(R::zero);
                    *entry = entry.add(&c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FockElement { terms }
    }

    fn mul_with_cap(&self, rhs: &FockElement<R>, cap: Option<u32>) -> FockElement<R> {
        let mut terms: BTreeMap<FockMonomial, R> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let coeff = ca.mul(cb);
                if coeff.is_zero() {
                    continue;
                }
                let l = ma.annihilation;
                let k = mb.creation;
                for j in 0..=l.min(k) {
                    let factor = binomial(l, j)
                        * binomial(k, j)
                        * {
                            let mut f: u128 = 1;
                            for t in 1..=j as u128 {
                                f *= t;
                            }
                            f
                        };
                    let mono = FockMonomial::new(
                        ma.creation + k - j,
                        l - j + mb.annihilation,
                    );
                    if let Some(cap) = cap {
                        if mono.annihilation > cap {
                            continue;
                        }
                    }
                    let c = coeff.scale_int(factor as i64);
                    let entry = terms.entry(mono).or_insert_with(R::zero);
                    *entry = entry.add(&c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FockElement { terms }
    }

    /// ⟨0| self |0⟩: the coefficient of the constant monomial.
    pub fn vacuum_expectation(&self) -> R {
        self.coefficient(FockMonomial::new(0, 0))
    }

    /// ⟨p| self |q⟩ evaluated by the ladder rules, monomial by monomial:
    /// a^l |q⟩ = q!/(q−l)! |q−l⟩ (zero for l > q), (a†)^k raises, and
    /// ⟨p|r⟩ = p! δ_pr. This is an independent code path from the
    /// normal-ordering rearrangement in multiplication.
    pub fn matrix_element(&self, p: u32, q: u32) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let l = m.annihilation;
            let k = m.creation;
            if l > q {
                continue;
            }
            if q - l + k != p {
                continue;
            }
            let weight = falling(q, l) as i64;
            let pfi = falling(p, p) as i64; // p!
            acc = acc.add(&c.scale_int(weight).scale_int(pfi));
        }
        acc
    }

    /// Map coefficients into another ring, dropping zeros.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> FockElement<S> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = f(c);
            if !c.is_zero() {
                terms.insert(*m, c);
            }
        }
        FockElement { terms }
    }

    /// Drop terms with annihilation power above `cap`.
    pub fn truncate_annihilation(&self, cap: u32) -> FockElement<R> {
        FockElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.annihilation <= cap)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl<R: Ring> Ring for FockElement<R> {
    fn zero() -> Self {
        FockElement {
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        FockElement::scalar(R::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(R::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        FockElement { terms }
    }

    fn neg(&self) -> Self {
        FockElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_full(rhs)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            FockElement::scalar(R::from_int(n))
        }
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.try_div_int(n)?);
        }
        Some(FockElement { terms })
    }
}

/// χ(ν): (a†)^ν for ν ≥ 0, a for ν = −1; usage error below −1.
pub fn chi<R: Ring>(nu: i64) -> Result<FockElement<R>, AlgebraError> {
    if nu < -1 {
        return Err(AlgebraError::usage(format!("chi requires ν ≥ -1, got {nu}")));
    }
    Ok(if nu == -1 {
        FockElement::annihilation(1)
    } else {
        FockElement::creation(nu as u32)
    })
}

/// ⟨p| letters |q⟩ for a raw word of oscillator letters, evaluated without
/// any normal ordering: the ladder oracle. Letters act on |q⟩ right to left.
pub fn ladder_word(p: u32, letters: &[Letter], q: u32) -> Rational {
    let mut state = q as i64;
    let mut scalar = Rational::one();
    for letter in letters.iter().rev() {
        match letter {
            Letter::Create => state += 1,
            Letter::Annihilate => {
                if state == 0 {
                    return Rational::zero();
                }
                scalar = Ring::mul(&scalar, &Rational::from_int(state));
                state -= 1;
            }
        }
    }
    if state != p as i64 {
        return Rational::zero();
    }
    Ring::mul(&scalar, &factorial(p))
}

impl<R: Ring + fmt::Display> fmt::Display for FockElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if m.creation > 0 || m.annihilation > 0 {
                write!(f, " ⊗ {}", fock_monomial_string(m))?;
            }
            first = false;
        }
        Ok(())
    }
}

pub fn fock_monomial_string(m: &FockMonomial) -> String {
    let mut parts = Vec::new();
    if m.creation > 0 {
        parts.push(if m.creation == 1 {
            "a†".to_string()
        } else {
            format!("(a†)^{}", m.creation)
        });
    }
    if m.annihilation > 0 {
        parts.push(if m.annihilation == 1 {
            "a".to_string()
        } else {
            format!("a^{}", m.annihilation)
        });
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

impl<R: Ring + fmt::Display> TermView for FockElement<R> {
    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(m, c)| format!("({c}) ⊗ {}", fock_monomial_string(m)))
    }
}

/// Monomial in the paired coherent variables z_j, z̄_j, j = 1..pairs.
/// Exponents are indexed 0-based: z[j-1], zbar[j-1].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoherentMono {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
}

impl CoherentMono {
    pub fn unit(pairs: usize) -> Self {
        CoherentMono {
            z: vec![0; pairs],
            zbar: vec![0; pairs],
        }
    }
}

/// Commutative polynomial in the coherent pairs over a client ring. The pair
/// variables commute with everything; coefficients multiply in operand order
/// so a noncommutative client ring is safe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentExpr<R: Ring> {
    pairs: usize,
    terms: BTreeMap<CoherentMono, R>,
}

impl<R: Ring> CoherentExpr<R> {
    pub fn zero_with(pairs: usize) -> Self {
        CoherentExpr {
            pairs,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(pairs: usize, c: R) -> Self {
        let mut e = CoherentExpr::zero_with(pairs);
        if !c.is_zero() {
            e.terms.insert(CoherentMono::unit(pairs), c);
        }
        e
    }

    /// z_j (1-based pair index) to the given power.
    pub fn z_power(pairs: usize, j: usize, power: u32, c: R) -> Self {
        assert!((1..=pairs).contains(&j), "pair index out of range");
        let mut m = CoherentMono::unit(pairs);
        m.z[j - 1] = power;
        let mut e = CoherentExpr::zero_with(pairs);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// z̄_j (1-based pair index) to the given power.
    pub fn zbar_power(pairs: usize, j: usize, power: u32, c: R) -> Self {
        assert!((1..=pairs).contains(&j), "pair index out of range");
        let mut m = CoherentMono::unit(pairs);
        m.zbar[j - 1] = power;
        let mut e = CoherentExpr::zero_with(pairs);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn add(&self, rhs: &CoherentExpr<R>) -> CoherentExpr<R> {
        assert_eq!(self.pairs, rhs.pairs, "pair count mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(R::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        CoherentExpr {
            pairs: self.pairs,
            terms,
        }
    }

    pub fn mul(&self, rhs: &CoherentExpr<R>) -> CoherentExpr<R> {
        assert_eq!(self.pairs, rhs.pairs, "pair count mismatch");
        let mut terms: BTreeMap<CoherentMono, R> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = CoherentMono {
                    z: ma.z.iter().zip(&mb.z).map(|(x, y)| x + y).collect(),
                    zbar: ma.zbar.iter().zip(&mb.zbar).map(|(x, y)| x + y).collect(),
                };
                let c = ca.mul(cb);
                let entry = terms.entry(m).or_insert_with(R::zero);
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        CoherentExpr {
            pairs: self.pairs,
            terms,
        }
    }

    /// The constant coefficient, once every pair has been reduced away.
    pub fn constant_part(&self) -> R {
        self.terms
            .get(&CoherentMono::unit(self.pairs))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.z.iter().all(|&e| e == 0) && m.zbar.iter().all(|&e| e == 0))
    }

    fn unify(&self, other: &CoherentExpr<R>) -> usize {
        if self.pairs == other.pairs {
            self.pairs
        } else if self.is_constant() && self.pairs == 0 {
            other.pairs
        } else if other.is_constant() && other.pairs == 0 {
            self.pairs
        } else {
            panic!("pair count mismatch between coherent expressions")
        }
    }

    fn rebased(&self, pairs: usize) -> CoherentExpr<R> {
        if self.pairs == pairs {
            return self.clone();
        }
        CoherentExpr::scalar(pairs, self.constant_part())
    }
}

impl<R: Ring> Ring for CoherentExpr<R> {
    fn zero() -> Self {
        CoherentExpr::zero_with(0)
    }

    fn one() -> Self {
        CoherentExpr::scalar(0, R::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        let pairs = self.unify(rhs);
        CoherentExpr::add(&self.rebased(pairs), &rhs.rebased(pairs))
    }

    fn neg(&self) -> Self {
        CoherentExpr {
            pairs: self.pairs,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let pairs = self.unify(rhs);
        CoherentExpr::mul(&self.rebased(pairs), &rhs.rebased(pairs))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        CoherentExpr::scalar(0, R::from_int(n))
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.try_div_int(n)?);
        }
        Some(CoherentExpr {
            pairs: self.pairs,
            terms,
        })
    }
}

/// Gaussian moment rule for one coherent pair:
/// z_j^p z̄_j^q · rest → p!/(p−q)! η^{p−q} · rest, where η is z_{j+1}
/// (the constant 0 when j+1 exceeds the pair count, i.e. z_n = 0), and the
/// factor vanishes for q > p. Pairs are reduced in the fixed order
/// j = 1, 2, ..., n−1.
pub fn gaussian_pair_reduce<R: Ring>(e: &CoherentExpr<R>, j: usize) -> CoherentExpr<R> {
    assert!((1..=e.pairs).contains(&j), "pair index out of range");
    let mut terms: BTreeMap<CoherentMono, R> = BTreeMap::new();
    for (m, c) in &e.terms {
        let p = m.z[j - 1];
        let q = m.zbar[j - 1];
        if q > p {
            continue;
        }
        let factor = falling(p, q) as i64; // p!/(p-q)!
        let residual = p - q;
        let mut out = m.clone();
        out.z[j - 1] = 0;
        out.zbar[j - 1] = 0;
        if j < e.pairs {
            out.z[j] += residual;
        } else if residual > 0 {
            // η = z_n = 0: positive residual power kills the term
            continue;
        }
        let c = c.scale_int(factor);
        if c.is_zero() {
            continue;
        }
        let entry = terms.entry(out).or_insert_with(R::zero);
        *entry = entry.add(&c);
    }
    terms.retain(|_, c| !c.is_zero());
    CoherentExpr {
        pairs: e.pairs,
        terms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use proptest::prelude::*;

    type F = FockElement<Rational>;

    fn a() -> F {
        F::annihilation(1)
    }

    fn ad() -> F {
        F::creation(1)
    }

    #[test]
    fn single_swap() {
        // a a† = a†a + 1
        let prod = a().mul(&ad());
        let want = F::from_terms([
            (FockMonomial::new(1, 1), rat(1)),
            (FockMonomial::new(0, 0), rat(1)),
        ]);
        assert_eq!(prod, want);
    }

    #[test]
    fn double_swap() {
        // a² (a†)² = (a†)²a² + 4 a†a + 2
        let prod = F::annihilation(2).mul(&F::creation(2));
        let want = F::from_terms([
            (FockMonomial::new(2, 2), rat(1)),
            (FockMonomial::new(1, 1), rat(4)),
            (FockMonomial::new(0, 0), rat(2)),
        ]);
        assert_eq!(prod, want);
    }

    #[test]
    fn already_normal() {
        assert_eq!(ad().mul(&ad()), F::creation(2));
    }

    #[test]
    fn vacuum_examples() {
        // ⟨0| a†a |0⟩ = 0
        let n_op = ad().mul(&a());
        assert!(Ring::is_zero(&n_op.vacuum_expectation()));
        // unbalanced monomials never reach the vacuum
        let unbalanced = F::from_terms([
            (FockMonomial::new(2, 1), rat(3)),
            (FockMonomial::new(0, 4), rat(-1)),
        ]);
        assert!(Ring::is_zero(&unbalanced.vacuum_expectation()));
        // ⟨0| a² (a†)² |0⟩ = 2
        let w = F::annihilation(2).mul(&F::creation(2));
        assert_eq!(w.vacuum_expectation(), rat(2));
        // ⟨0| a a† a a† |0⟩ = 1
        let w = a().mul(&ad()).mul(&a()).mul(&ad());
        assert_eq!(w.vacuum_expectation(), rat(1));
    }

    #[test]
    fn matrix_element_examples() {
        // ⟨n|m⟩ = n! δ_nm
        let one = F::one();
        assert_eq!(one.matrix_element(3, 3), rat(6));
        assert!(Ring::is_zero(&one.matrix_element(2, 3)));
        // ⟨1| a† |0⟩ = 1
        assert_eq!(ad().matrix_element(1, 0), rat(1));
        // ⟨0| a |1⟩ = 1
        assert_eq!(a().matrix_element(0, 1), rat(1));
    }

    #[test]
    fn chi_cases() {
        assert_eq!(chi::<Rational>(0).unwrap(), F::one());
        assert_eq!(chi::<Rational>(-1).unwrap(), a());
        assert_eq!(chi::<Rational>(2).unwrap(), F::creation(2));
        assert!(chi::<Rational>(-2).is_err());
    }

    #[test]
    fn ladder_word_matches_normal_ordering() {
        let word = [Letter::Annihilate, Letter::Annihilate, Letter::Create, Letter::Create];
        assert_eq!(ladder_word(0, &word, 0), rat(2));
        let prod = word.iter().fold(F::one(), |acc, l| {
            acc.mul(&match l {
                Letter::Create => ad(),
                Letter::Annihilate => a(),
            })
        });
        assert_eq!(prod.vacuum_expectation(), rat(2));
    }

    #[test]
    fn truncated_mul_drops_high_annihilation() {
        let w = F::annihilation(2).mul_trunc(&F::annihilation(1), 2);
        assert!(Ring::is_zero(&w));
        let w = F::annihilation(2).mul_trunc(&F::annihilation(1), 3);
        assert_eq!(w, F::annihilation(3));
    }

    #[test]
    fn gaussian_reduce_examples() {
        // pairs = 2 so η = z_2 exists for j = 1
        let z1 = CoherentExpr::z_power(2, 1, 1, rat(1));
        let zb1 = CoherentExpr::zbar_power(2, 1, 1, rat(1));
        let e = z1.mul(&zb1);
        let r = gaussian_pair_reduce(&e, 1);
        assert_eq!(r, CoherentExpr::scalar(2, rat(1)));

        // z_1³ z̄_1 → 3 z_2²
        let e = CoherentExpr::z_power(2, 1, 3, rat(1)).mul(&CoherentExpr::zbar_power(2, 1, 1, rat(1)));
        let r = gaussian_pair_reduce(&e, 1);
        assert_eq!(r, CoherentExpr::z_power(2, 2, 2, rat(3)));

        // z̄_1² z_1 → 0 (q > p)
        let e = CoherentExpr::zbar_power(2, 1, 2, rat(1)).mul(&CoherentExpr::z_power(2, 1, 1, rat(1)));
        let r = gaussian_pair_reduce(&e, 1);
        assert!(r.constant_part().is_zero() && r.is_constant());
    }

    fn arb_fock() -> impl Strategy<Value = F> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..4).prop_map(|terms| {
            F::from_terms(
                terms
                    .into_iter()
                    .map(|((k, l), c)| (FockMonomial::new(k, l), rat(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn associativity(p in arb_fock(), q in arb_fock(), r in arb_fock()) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        }

        #[test]
        fn count_difference_conservation(p in arb_fock(), q in arb_fock()) {
            // every product monomial's count difference is realized by some
            // pair of contributing monomials
            let prod = p.mul(&q);
            let diffs: Vec<i64> = p.terms().flat_map(|(mp, _)| {
                q.terms().map(move |(mq, _)| mp.count_difference() + mq.count_difference())
            }).collect();
            for (m, _) in prod.terms() {
                prop_assert!(diffs.contains(&m.count_difference()));
            }
        }

        #[test]
        fn vacuum_equals_ladder_matrix_element(p in arb_fock(), q in arb_fock()) {
            let w = p.mul(&q);
            prop_assert_eq!(w.vacuum_expectation(), w.matrix_element(0, 0));
        }
    }
}
