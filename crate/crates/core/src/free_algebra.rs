//! Free noncommutative polynomials over a coefficient ring: arbitrary
//! non-commuting indeterminates with no relations imposed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::ring::{Ring, TermView};

/// A declared alphabet of generators with unique ids and display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Arc<Vec<String>>,
}

impl Alphabet {
    pub fn declare<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet {
            names: Arc::new(names.into_iter().map(Into::into).collect()),
        }
    }

    pub fn empty() -> Self {
        Alphabet {
            names: Arc::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    fn same(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    /// The generator with the given id, as a polynomial over `R`.
    pub fn gen<R: Ring>(&self, id: u32) -> FreePoly<R> {
        assert!((id as usize) < self.len(), "generator id out of range");
        FreePoly::from_terms(self.clone(), [(FreeWord(vec![id]), R::one())])
    }

    pub fn gen_by_name<R: Ring>(&self, name: &str) -> FreePoly<R> {
        let id = self
            .names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("undeclared generator {name:?}"));
        self.gen(id as u32)
    }
}

/// A word in the free monoid on the alphabet; the empty word is the
/// multiplicative identity. Words compare length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<u32>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn concat(&self, rhs: &FreeWord) -> FreeWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        FreeWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Free noncommutative polynomial: a finite R-linear combination of words.
/// Multiplication is the bilinear extension of word concatenation; there are
/// deliberately no rewriting rules here.
#[derive(Clone, Debug)]
pub struct FreePoly<R: Ring> {
    alphabet: Alphabet,
    terms: BTreeMap<FreeWord, R>,
}

impl<R: Ring> PartialEq for FreePoly<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet.same(&other.alphabet) {
            return self.terms == other.terms;
        }
        if self.is_scalar() && other.is_scalar() {
            return self.scalar_part() == other.scalar_part();
        }
        false
    }
}

impl<R: Ring> Eq for FreePoly<R> {}

impl<R: Ring> FreePoly<R> {
    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (FreeWord, R)>,
    ) -> Self {
        let mut map: BTreeMap<FreeWord, R> = BTreeMap::new();
        for (w, c) in terms {
            assert!(
                w.0.iter().all(|&id| (id as usize) < alphabet.len()),
                "word letter outside the declared alphabet"
            );
            let entry = map.entry(w).or_insert_with(R::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        FreePoly { alphabet, terms: map }
    }

    pub fn constant(alphabet: Alphabet, c: R) -> Self {
        if c.is_zero() {
            FreePoly {
                alphabet,
                terms: BTreeMap::new(),
            }
        } else {
            FreePoly::from_terms(alphabet, [(FreeWord::empty(), c)])
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &R)> {
        self.terms.iter()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(FreeWord::is_empty)
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> R {
        self.terms
            .get(&FreeWord::empty())
            .cloned()
            .unwrap_or_else(R::zero)
    }

    fn unify(&self, other: &FreePoly<R>) -> Result<Alphabet, AlgebraError> {
        if self.alphabet.same(&other.alphabet) {
            Ok(self.alphabet.clone())
        } else if self.is_scalar() {
            Ok(other.alphabet.clone())
        } else if other.is_scalar() {
            Ok(self.alphabet.clone())
        } else {
            Err(AlgebraError::usage(
                "alphabet mismatch: free polynomials over different alphabets",
            ))
        }
    }

    fn rebased(&self, alphabet: &Alphabet) -> FreePoly<R> {
        if self.alphabet.same(alphabet) {
            self.clone()
        } else {
            FreePoly {
                alphabet: alphabet.clone(),
                terms: self.terms.clone(),
            }
        }
    }

    pub fn checked_add(&self, rhs: &FreePoly<R>) -> Result<FreePoly<R>, AlgebraError> {
        let alphabet = self.unify(rhs)?;
        let mut terms = self.rebased(&alphabet).terms;
        for (w, c) in &rhs.terms {
            let entry = terms.entry(w.clone()).or_insert_with(R::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FreePoly { alphabet, terms })
    }

    /// Bilinear extension of word concatenation; usage error on distinct
    /// alphabets.
    pub fn checked_mul(&self, rhs: &FreePoly<R>) -> Result<FreePoly<R>, AlgebraError> {
        let alphabet = self.unify(rhs)?;
        let mut terms: BTreeMap<FreeWord, R> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let w = wa.concat(wb);
                let c = ca.mul(cb);
                let entry = terms.entry(w).or_insert_with(R::zero);
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FreePoly { alphabet, terms })
    }

    /// Map every coefficient, keeping words; used to lift scalars through the
    /// tower.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> FreePoly<S> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let c = f(c);
            if !c.is_zero() {
                terms.insert(w.clone(), c);
            }
        }
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        }
    }
}

impl<R: Ring> Ring for FreePoly<R> {
    fn zero() -> Self {
        FreePoly {
            alphabet: Alphabet::empty(),
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        FreePoly::constant(Alphabet::empty(), R::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("FreePoly::add")
    }

    fn neg(&self) -> Self {
        FreePoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("FreePoly::mul")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        FreePoly::constant(Alphabet::empty(), R::from_int(n))
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            terms.insert(w.clone(), c.try_div_int(n)?);
        }
        Some(FreePoly {
            alphabet: self.alphabet.clone(),
            terms,
        })
    }
}

/// `pq - qp`.
pub fn fp_commutator<R: Ring>(p: &FreePoly<R>, q: &FreePoly<R>) -> FreePoly<R> {
    p.commutator(q)
}

impl<R: Ring + fmt::Display> fmt::Display for FreePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", self.word_string(w))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> FreePoly<R> {
    fn word_string(&self, w: &FreeWord) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.0.iter()
                .map(|&id| self.alphabet.name(id).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl<R: Ring + fmt::Display> TermView for FreePoly<R> {
    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(w, c)| format!("({c}) {}", self.word_string(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Rational};
    use proptest::prelude::*;

    fn uvw() -> Alphabet {
        Alphabet::declare(["u", "v", "w"])
    }

    fn gens() -> (FreePoly<Rational>, FreePoly<Rational>, FreePoly<Rational>) {
        let a = uvw();
        (a.gen(0), a.gen(1), a.gen(2))
    }

    #[test]
    fn concatenation_and_distributivity() {
        let (u, v, w) = gens();
        let uv = u.mul(&v);
        assert_eq!(uv.term_count(), 1);
        let lhs = u.add(&v).mul(&w);
        let rhs = u.mul(&w).add(&v.mul(&w));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn freeness_distinguishes_orders() {
        let (u, v, _) = gens();
        assert_ne!(u.mul(&v), v.mul(&u));
    }

    #[test]
    fn commutator_examples() {
        let (u, v, w) = gens();
        assert!(fp_commutator(&u, &u).is_zero());
        assert_eq!(fp_commutator(&u, &v), u.mul(&v).sub(&v.mul(&u)));
        // Leibniz: [uv, w] = u[v,w] + [u,w]v
        let lhs = fp_commutator(&u.mul(&v), &w);
        let rhs = u.mul(&fp_commutator(&v, &w)).add(&fp_commutator(&u, &w).mul(&v));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn empty_word_is_identity() {
        let (u, _, _) = gens();
        let one = FreePoly::<Rational>::one();
        assert_eq!(u.mul(&one), u);
        assert_eq!(one.mul(&u), u);
    }

    #[test]
    fn alphabet_mismatch_is_usage_error() {
        let a = Alphabet::declare(["x"]);
        let b = Alphabet::declare(["y"]);
        let err = a
            .gen::<Rational>(0)
            .checked_mul(&b.gen::<Rational>(0))
            .unwrap_err();
        assert!(matches!(err, AlgebraError::Usage(_)));
    }

    fn arb_fp() -> impl Strategy<Value = FreePoly<Rational>> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 0..4), -3i64..4),
            0..4,
        )
        .prop_map(|terms| {
            FreePoly::from_terms(
                uvw(),
                terms.into_iter().map(|(w, c)| (FreeWord(w), rat(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn jacobi_identity(p in arb_fp(), q in arb_fp(), r in arb_fp()) {
            let total = fp_commutator(&p, &fp_commutator(&q, &r))
                .add(&fp_commutator(&r, &fp_commutator(&p, &q)))
                .add(&fp_commutator(&q, &fp_commutator(&r, &p)));
            prop_assert!(total.is_zero());
        }

        #[test]
        fn associativity(p in arb_fp(), q in arb_fp(), r in arb_fp()) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        }
    }
}
