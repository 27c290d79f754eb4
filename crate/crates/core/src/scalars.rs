//! Commutative multivariate polynomials over the rationals: the parameter
//! ring for the symbolic α, β, s, ℓ and grading variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::ring::{rational_string, Rational, Ring, TermView};

/// A declared, ordered set of parameter names. Parameter sets are fixed up
/// front per computation; operations never grow them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    names: Arc<Vec<String>>,
}

impl ParamSet {
    pub fn declare<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        ParamSet {
            names: Arc::new(names.into_iter().map(Into::into).collect()),
        }
    }

    pub fn empty() -> Self {
        ParamSet {
            names: Arc::new(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn same(&self, other: &ParamSet) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    /// The variable `name` as a polynomial.
    pub fn var(&self, name: &str) -> ParamPoly {
        let i = self
            .index_of(name)
            .unwrap_or_else(|| panic!("undeclared parameter {name:?}"));
        let mut exps = vec![0u32; self.len()];
        exps[i] = 1;
        ParamPoly::from_terms(self.clone(), [(ExpVec(exps), Rational::one())])
    }

    /// A rational constant over this set.
    pub fn constant(&self, c: Rational) -> ParamPoly {
        if Ring::is_zero(&c) {
            return ParamPoly {
                params: self.clone(),
                terms: BTreeMap::new(),
            };
        }
        ParamPoly::from_terms(self.clone(), [(ExpVec(vec![0; self.len()]), c)])
    }
}

/// Exponent vector ordered by graded lexicographic order (total degree first,
/// then lex), so the term map has one fixed canonical iteration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Commutative polynomial with rational coefficients over a declared
/// parameter set. Canonical form: no stored zero coefficients, exponent
/// vectors of the declared dimension, graded-lex term order.
#[derive(Clone, Debug)]
pub struct ParamPoly {
    params: ParamSet,
    terms: BTreeMap<ExpVec, Rational>,
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.params.same(&other.params) {
            return self.terms == other.terms;
        }
        // constants are the same rational in every parameter ring
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ParamPoly {}

impl ParamPoly {
    pub fn from_terms(
        params: ParamSet,
        terms: impl IntoIterator<Item = (ExpVec, Rational)>,
    ) -> Self {
        let mut map: BTreeMap<ExpVec, Rational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.0.len(), params.len(), "exponent vector dimension");
            let entry = map.entry(e).or_insert_with(Rational::zero);
            *entry = Ring::add(entry, &c);
        }
        map.retain(|_, c| !Ring::is_zero(c));
        ParamPoly { params: map_params(&map, params), terms: map }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Rational)> {
        self.terms.iter()
    }

    pub fn constant_rational(c: Rational) -> Self {
        ParamSet::empty().constant(c)
    }

    /// True when the polynomial involves no parameter (a pure rational).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total_degree() == 0)
    }

    /// The value of a constant polynomial.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().unwrap().clone())
    }

    /// The coefficient of the constant (all-zero exponent) monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.total_degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn unify(&self, other: &ParamPoly) -> Result<ParamSet, AlgebraError> {
        if self.params.same(&other.params) {
            Ok(self.params.clone())
        } else if self.is_constant() {
            Ok(other.params.clone())
        } else if other.is_constant() {
            Ok(self.params.clone())
        } else {
            Err(AlgebraError::usage(
                "parameter-set mismatch: operands declared over different parameter sets",
            ))
        }
    }

    fn rebased(&self, params: &ParamSet) -> ParamPoly {
        if self.params.same(params) {
            return self.clone();
        }
        // only constants are ever rebased
        let mut terms = BTreeMap::new();
        if let Some((_, c)) = self.terms.iter().next() {
            terms.insert(ExpVec(vec![0; params.len()]), c.clone());
        }
        ParamPoly {
            params: params.clone(),
            terms,
        }
    }

    pub fn checked_add(&self, rhs: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        let params = self.unify(rhs)?;
        let a = self.rebased(&params);
        let b = rhs.rebased(&params);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry = Ring::add(entry, &c);
        }
        terms.retain(|_, c| !Ring::is_zero(c));
        Ok(ParamPoly { params, terms })
    }

    /// Exact product; usage error when the operands' parameter sets differ.
    pub fn checked_mul(&self, rhs: &ParamPoly) -> Result<ParamPoly, AlgebraError> {
        let params = self.unify(rhs)?;
        let a = self.rebased(&params);
        let b = rhs.rebased(&params);
        let mut terms: BTreeMap<ExpVec, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                let c = Ring::mul(ca, cb);
                let entry = terms.entry(ExpVec(exps)).or_insert_with(Rational::zero);
                *entry = Ring::add(entry, &c);
            }
        }
        terms.retain(|_, c| !Ring::is_zero(c));
        Ok(ParamPoly { params, terms })
    }

    /// Evaluate the bound parameters exactly; unbound parameters stay
    /// symbolic. The result lives over the same declared set.
    pub fn substitute(&self, bindings: &BTreeMap<String, Rational>) -> ParamPoly {
        let mut idx_bindings: Vec<Option<Rational>> = vec![None; self.params.len()];
        for (name, value) in bindings {
            if let Some(i) = self.params.index_of(name) {
                idx_bindings[i] = Some(value.clone());
            }
        }
        let mut terms: BTreeMap<ExpVec, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = e.0.clone();
            for (i, b) in idx_bindings.iter().enumerate() {
                if let Some(v) = b {
                    for _ in 0..exps[i] {
                        coeff = Ring::mul(&coeff, v);
                    }
                    exps[i] = 0;
                }
            }
            if Ring::is_zero(&coeff) {
                continue;
            }
            let entry = terms.entry(ExpVec(exps)).or_insert_with(Rational::zero);
            *entry = Ring::add(entry, &coeff);
        }
        terms.retain(|_, c| !Ring::is_zero(c));
        ParamPoly {
            params: self.params.clone(),
            terms,
        }
    }

    /// Total degree of the polynomial (0 for constants and zero).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if Ring::is_zero(c) {
            return ParamPoly {
                params: self.params.clone(),
                terms: BTreeMap::new(),
            };
        }
        ParamPoly {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), Ring::mul(x, c)))
                .collect(),
        }
    }
}

fn map_params(map: &BTreeMap<ExpVec, Rational>, params: ParamSet) -> ParamSet {
    // zero polynomial keeps its declared set; nothing to normalize
    let _ = map;
    params
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly {
            params: ParamSet::empty(),
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        ParamPoly::constant_rational(Rational::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("ParamPoly::add")
    }

    fn neg(&self) -> Self {
        ParamPoly {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), Ring::neg(c)))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("ParamPoly::mul")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        ParamPoly::constant_rational(Rational::from_int(n))
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let inv = Rational::one().try_div_int(n)?;
        Some(self.scale(&inv))
    }
}

impl PartialEq<Rational> for ParamPoly {
    fn eq(&self, other: &Rational) -> bool {
        self.as_rational().map(|c| c == *other).unwrap_or(false)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono = monomial_string(&self.params, e);
            let (prefix, mag) = crate::ring::signed_coeff_prefix(c, first);
            if mono.is_empty() {
                write!(f, "{prefix}{}", rational_string(&mag))?;
            } else if mag == Rational::one() {
                write!(f, "{prefix}{mono}")?;
            } else {
                write!(f, "{prefix}{} {mono}", rational_string(&mag))?;
            }
            first = false;
        }
        Ok(())
    }
}

fn monomial_string(params: &ParamSet, e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        if k == 1 {
            parts.push(params.name(i).to_string());
        } else if k > 1 {
            parts.push(format!("{}^{}", params.name(i), k));
        }
    }
    parts.join(" ")
}

impl TermView for ParamPoly {
    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn first_term(&self) -> Option<String> {
        self.terms.iter().next().map(|(e, c)| {
            let mono = monomial_string(&self.params, e);
            if mono.is_empty() {
                rational_string(c)
            } else {
                format!("{} {mono}", rational_string(c))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, ratio};
    use proptest::prelude::*;

    fn ab_set() -> ParamSet {
        ParamSet::declare(["a", "b", "s"])
    }

    #[test]
    fn monomial_product() {
        let p = ab_set();
        let prod = p.var("a").mul(&p.var("b"));
        assert_eq!(prod.term_count(), 1);
        assert_eq!(prod.total_degree(), 2);
    }

    #[test]
    fn difference_of_squares() {
        let p = ab_set();
        let s = p.var("s");
        let one = p.constant(rat(1));
        let lhs = one.add(&s).mul(&one.sub(&s));
        let rhs = one.sub(&s.mul(&s));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_annihilates() {
        let p = ab_set();
        let prod = p.var("a").mul(&ParamPoly::zero());
        assert!(Ring::is_zero(&prod));
    }

    #[test]
    fn mismatched_sets_rejected() {
        let p = ParamSet::declare(["x"]);
        let q = ParamSet::declare(["y"]);
        let err = p.var("x").checked_mul(&q.var("y")).unwrap_err();
        assert!(matches!(err, AlgebraError::Usage(_)));
        // constants unify with anything
        assert!(p.var("x").checked_mul(&ParamPoly::from_int(2)).is_ok());
    }

    #[test]
    fn substitute_evaluates_bound_parameters() {
        let p = ab_set();
        let s = p.var("s");
        let expr = s.mul(&s).add(&s); // s^2 + s
        let mut b = BTreeMap::new();
        b.insert("s".to_string(), rat(2));
        assert_eq!(expr.substitute(&b).as_rational(), Some(rat(6)));

        let ab = p.var("a").mul(&p.var("b"));
        let mut b0 = BTreeMap::new();
        b0.insert("a".to_string(), rat(0));
        assert!(Ring::is_zero(&ab.substitute(&b0)));

        // partial substitution: l(l - s) at s=1 -> l^2 - l
        let q = ParamSet::declare(["l", "s"]);
        let l = q.var("l");
        let expr = l.mul(&l.sub(&q.var("s")));
        let mut b1 = BTreeMap::new();
        b1.insert("s".to_string(), rat(1));
        let got = expr.substitute(&b1);
        let want = l.mul(&l).sub(&l);
        assert_eq!(got, want);
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        assert!(ExpVec(vec![0, 2]) > ExpVec(vec![1, 0]));
        assert!(ExpVec(vec![1, 0]) < ExpVec(vec![0, 2]));
        assert!(ExpVec(vec![1, 1]) < ExpVec(vec![2, 0]));
    }

    #[test]
    fn display_renders_signs() {
        let p = ab_set();
        let e = p.var("a").scale(&ratio(-3, 2)).add(&p.constant(rat(1)));
        assert_eq!(e.to_string(), "1 - 3/2 a");
    }

    fn arb_poly() -> impl Strategy<Value = ParamPoly> {
        let names = ab_set();
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, 3),
                -4i64..5,
            ),
            0..5,
        )
        .prop_map(move |terms| {
            ParamPoly::from_terms(
                names.clone(),
                terms
                    .into_iter()
                    .map(|(e, c)| (ExpVec(e), rat(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.add(&q), q.add(&p));
            prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert!(Ring::is_zero(&p.sub(&p)));
        }

        #[test]
        fn canonical_form_is_construction_order_independent(p in arb_poly(), q in arb_poly()) {
            // building p+q term by term in either order yields equal maps
            prop_assert_eq!(p.add(&q), q.add(&p));
        }
    }
}
