//! Exterior algebra over a client coefficient ring, with Berezin integration
//! and exponentials of even nilpotent elements.
//!
//! Generators are identified with bit positions in a mask. For the paired
//! setup on ψ̄_1..ψ̄_n, ψ_1..ψ_n the fixed global order is
//! ψ̄_1 < ψ_1 < ψ̄_2 < ψ_2 < …, i.e. bit 2(i−1) is ψ̄_i and bit 2(i−1)+1 is
//! ψ_i. Ring coefficients commute with all generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::ring::{Ring, TermView};

/// Element of the exterior algebra on `gens` generators: a map from canonical
/// generator subsets (bit masks, factors in increasing bit order) to
/// coefficients, signs absorbed into the coefficients, no zeros stored.
#[derive(Clone, Debug)]
pub struct GrassmannElement<R: Ring> {
    gens: usize,
    terms: BTreeMap<u64, R>,
}

impl<R: Ring> PartialEq for GrassmannElement<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.gens == other.gens {
            return self.terms == other.terms;
        }
        if self.is_scalar() && other.is_scalar() {
            return self.scalar_part() == other.scalar_part();
        }
        false
    }
}

impl<R: Ring> Eq for GrassmannElement<R> {}

/// Number of transpositions needed to merge two canonical words, i.e. the
/// sign of interleaving mask `b` into mask `a`.
fn merge_sign(a: u64, b: u64) -> i64 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let g = bb.trailing_zeros();
        // factors of `a` strictly above g must be crossed
        swaps += (a >> (g + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<R: Ring> GrassmannElement<R> {
    pub fn zero_with(gens: usize) -> Self {
        GrassmannElement {
            gens,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(gens: usize, c: R) -> Self {
        let mut e = GrassmannElement::zero_with(gens);
        if !c.is_zero() {
            e.terms.insert(0, c);
        }
        e
    }

    /// Single generator by bit position.
    pub fn generator(gens: usize, bit: usize, c: R) -> Self {
        assert!(bit < gens, "generator bit out of range");
        let mut e = GrassmannElement::zero_with(gens);
        if !c.is_zero() {
            e.terms.insert(1 << bit, c);
        }
        e
    }

    /// ψ̄_i in the paired convention (1-based i).
    pub fn psi_bar(pairs: usize, i: usize, c: R) -> Self {
        GrassmannElement::generator(2 * pairs, 2 * (i - 1), c)
    }

    /// ψ_i in the paired convention (1-based i).
    pub fn psi(pairs: usize, i: usize, c: R) -> Self {
        GrassmannElement::generator(2 * pairs, 2 * (i - 1) + 1, c)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &R)> {
        self.terms.iter()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    /// Coefficient of the empty generator subset.
    pub fn scalar_part(&self) -> R {
        self.terms.get(&0).cloned().unwrap_or_else(R::zero)
    }

    fn unify(&self, other: &GrassmannElement<R>) -> Result<usize, AlgebraError> {
        if self.gens == other.gens {
            Ok(self.gens)
        } else if self.is_scalar() && self.gens == 0 {
            Ok(other.gens)
        } else if other.is_scalar() && other.gens == 0 {
            Ok(self.gens)
        } else {
            Err(AlgebraError::usage(
                "generator-set mismatch: Grassmann elements over different generator sets",
            ))
        }
    }

    pub fn checked_add(&self, rhs: &GrassmannElement<R>) -> Result<GrassmannElement<R>, AlgebraError> {
        let gens = self.unify(rhs)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(R::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GrassmannElement { gens, terms })
    }

    /// Product with the anticommutation sign; a repeated generator kills the
    /// term. Coefficients multiply in operand order.
    pub fn checked_mul(&self, rhs: &GrassmannElement<R>) -> Result<GrassmannElement<R>, AlgebraError> {
        let gens = self.unify(rhs)?;
        let mut terms: BTreeMap<u64, R> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(*ma, *mb);
                let c = ca.mul(cb).scale_int(sign);
                let entry = terms.entry(ma | mb).or_insert_with(R::zero);
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GrassmannElement { gens, terms })
    }

    /// Berezin integral over the full paired generator set with measure
    /// ∏_{i=1..n} dψ_i dψ̄_i: the coefficient of the top monomial in
    /// canonical order, normalized so that ∫ dψ_i dψ̄_i (ψ̄_i ψ_i) = +1 for
    /// each pair.
    pub fn berezin_integral(&self) -> R {
        let full: u64 = if self.gens == 64 {
            u64::MAX
        } else {
            (1u64 << self.gens) - 1
        };
        self.terms.get(&full).cloned().unwrap_or_else(R::zero)
    }

    /// exp of an even nilpotent element: Σ_{k} e^k/k!, exact because the
    /// series terminates on finitely many generators. Domain errors: constant
    /// term present, or a term of odd generator count.
    pub fn exp_even(&self) -> Result<GrassmannElement<R>, AlgebraError> {
        for m in self.terms.keys() {
            if *m == 0 {
                return Err(AlgebraError::domain(
                    "exp_even: exponent has a constant term (not nilpotent)",
                ));
            }
            if m.count_ones() % 2 != 0 {
                return Err(AlgebraError::domain(
                    "exp_even: exponent has a term of odd generator count",
                ));
            }
        }
        let mut sum = GrassmannElement::scalar(self.gens, R::one());
        let mut power = GrassmannElement::scalar(self.gens, R::one());
        let max_k = self.gens / 2;
        for k in 1..=max_k {
            power = power.checked_mul(self)?;
            if power.terms.is_empty() {
                break;
            }
            let fact: i64 = (1..=k as i64).product();
            let term = power.try_div_int(fact).ok_or_else(|| {
                AlgebraError::domain("exp_even requires rational division in the coefficient ring")
            })?;
            sum = sum.checked_add(&term)?;
        }
        Ok(sum)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> GrassmannElement<S> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = f(c);
            if !c.is_zero() {
                terms.insert(*m, c);
            }
        }
        GrassmannElement {
            gens: self.gens,
            terms,
        }
    }
}

impl<R: Ring> Ring for GrassmannElement<R> {
    fn zero() -> Self {
        GrassmannElement::zero_with(0)
    }

    fn one() -> Self {
        GrassmannElement::scalar(0, R::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("GrassmannElement::add")
    }

    fn neg(&self) -> Self {
        GrassmannElement {
            gens: self.gens,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("GrassmannElement::mul")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        GrassmannElement::scalar(0, R::from_int(n))
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.try_div_int(n)?);
        }
        Some(GrassmannElement {
            gens: self.gens,
            terms,
        })
    }
}

/// Names bits in the paired convention for display.
fn paired_bit_name(bit: usize) -> String {
    let i = bit / 2 + 1;
    if bit.is_multiple_of(2) {
        format!("ψ̄_{i}")
    } else {
        format!("ψ_{i}")
    }
}

fn mask_string(mask: u64) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut m = mask;
    while m != 0 {
        let g = m.trailing_zeros() as usize;
        parts.push(paired_bit_name(g));
        m &= m - 1;
    }
    parts.join(" ")
}

impl<R: Ring + fmt::Display> fmt::Display for GrassmannElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if *m == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", mask_string(*m))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring + fmt::Display> TermView for GrassmannElement<R> {
    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(m, c)| format!("({c}) {}", mask_string(*m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Rational};

    type G = GrassmannElement<Rational>;

    #[test]
    fn nilpotency_and_anticommutation() {
        let p1 = G::psi(2, 1, rat(1));
        let p2 = G::psi(2, 2, rat(1));
        assert!(p1.mul(&p1).is_zero());
        assert_eq!(p1.mul(&p2), p2.mul(&p1).neg());
    }

    #[test]
    fn even_elements_commute() {
        let pair = |i: usize| G::psi_bar(2, i, rat(1)).mul(&G::psi(2, i, rat(1)));
        assert_eq!(pair(1).mul(&pair(2)), pair(2).mul(&pair(1)));
    }

    #[test]
    fn berezin_single_pair() {
        // ∫ (1 + m ψ̄_1 ψ_1) = m
        let e = G::scalar(2, rat(1)).add(&G::psi_bar(1, 1, rat(5)).mul(&G::psi(1, 1, rat(1))));
        assert_eq!(e.berezin_integral(), rat(5));
    }

    #[test]
    fn berezin_missing_generator_vanishes() {
        let e = G::psi_bar(2, 1, rat(1)).mul(&G::psi(2, 1, rat(1)));
        assert!(e.berezin_integral().is_zero());
    }

    #[test]
    fn berezin_of_exponential_is_determinant_2x2() {
        // M = [[1,2],[3,4]], ∫ exp(ψ̄ M ψ) = det M = -2
        let m = [[rat(1), rat(2)], [rat(3), rat(4)]];
        let mut quad = G::zero_with(4);
        for i in 1..=2 {
            for j in 1..=2 {
                let term = G::psi_bar(2, i, m[i - 1][j - 1].clone()).mul(&G::psi(2, j, rat(1)));
                quad = quad.add(&term);
            }
        }
        let integral = quad.exp_even().unwrap().berezin_integral();
        assert_eq!(integral, rat(-2));
    }

    #[test]
    fn exp_even_examples() {
        assert_eq!(
            G::zero_with(2).exp_even().unwrap(),
            G::scalar(2, rat(1))
        );
        let pair = G::psi_bar(1, 1, rat(1)).mul(&G::psi(1, 1, rat(1)));
        assert_eq!(pair.exp_even().unwrap(), G::scalar(2, rat(1)).add(&pair));
    }

    #[test]
    fn exp_even_rejects_bad_input() {
        let constant = G::scalar(2, rat(1));
        assert!(matches!(
            constant.exp_even(),
            Err(AlgebraError::Domain(_))
        ));
        let odd = G::psi(1, 1, rat(1));
        assert!(matches!(odd.exp_even(), Err(AlgebraError::Domain(_))));
    }

    #[test]
    fn generator_set_mismatch() {
        let a = G::psi(1, 1, rat(1));
        let b = G::psi(2, 2, rat(1));
        assert!(matches!(
            a.checked_mul(&b),
            Err(AlgebraError::Usage(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        // even nilpotent elements on three pairs
        fn arb_even() -> impl Strategy<Value = G> {
            proptest::collection::vec((0usize..3, 0usize..3, -3i64..4), 0..4).prop_map(|terms| {
                terms.into_iter().fold(G::zero_with(6), |acc, (i, j, c)| {
                    let pair = G::psi_bar(3, i + 1, rat(c)).mul(&G::psi(3, j + 1, rat(1)));
                    acc.add(&pair)
                })
            })
        }

        proptest! {
            #[test]
            fn exponential_is_additive_on_even_elements(a in arb_even(), b in arb_even()) {
                // even elements commute, so exp(a+b) = exp(a) exp(b) exactly
                let lhs = a.add(&b).exp_even().unwrap();
                let rhs = a.exp_even().unwrap().mul(&b.exp_even().unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn odd_elements_anticommute(i in 0usize..3, j in 0usize..3) {
                let p = G::psi(3, i + 1, rat(1));
                let q = G::psi_bar(3, j + 1, rat(1));
                prop_assert_eq!(p.mul(&q), q.mul(&p).neg());
            }
        }
    }
}
