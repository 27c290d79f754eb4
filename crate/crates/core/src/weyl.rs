//! Multivariate Weyl algebra: positions z and derivatives ∂ indexed by
//! (row, flavor) pairs, with [z, ∂] = −δδ, kept in normal form (all z factors
//! left of all ∂ factors) with ParamPoly coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::ring::{binomial, Rational, Ring, TermView};
use crate::scalars::{ParamPoly, ParamSet};

/// Generator grid: rows × flavors position/derivative pairs, plus the
/// parameter set the coefficients live over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylAlgebra {
    inner: Arc<WeylAlgebraInner>,
}

#[derive(Debug, PartialEq, Eq)]
struct WeylAlgebraInner {
    rows: usize,
    flavors: usize,
    params: ParamSet,
}

impl WeylAlgebra {
    pub fn new(rows: usize, flavors: usize, params: ParamSet) -> Self {
        WeylAlgebra {
            inner: Arc::new(WeylAlgebraInner {
                rows,
                flavors,
                params,
            }),
        }
    }

    pub fn rows(&self) -> usize {
        self.inner.rows
    }

    pub fn flavors(&self) -> usize {
        self.inner.flavors
    }

    pub fn params(&self) -> &ParamSet {
        &self.inner.params
    }

    pub fn gens(&self) -> usize {
        self.inner.rows * self.inner.flavors
    }

    fn same(&self, other: &WeylAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }

    fn gen_index(&self, row: usize, flavor: usize) -> usize {
        assert!(row < self.rows() && flavor < self.flavors(), "generator index");
        row * self.flavors() + flavor
    }

    /// The position generator z at (row, flavor), 0-based.
    pub fn z(&self, row: usize, flavor: usize) -> WeylElement {
        let mut m = WeylMonomial::unit(self.gens());
        m.z[self.gen_index(row, flavor)] = 1;
        WeylElement::from_terms(self.clone(), [(m, ParamPoly::one())])
    }

    /// The derivative generator ∂ at (row, flavor), 0-based.
    pub fn d(&self, row: usize, flavor: usize) -> WeylElement {
        let mut m = WeylMonomial::unit(self.gens());
        m.d[self.gen_index(row, flavor)] = 1;
        WeylElement::from_terms(self.clone(), [(m, ParamPoly::one())])
    }

    pub fn scalar(&self, c: ParamPoly) -> WeylElement {
        if c.is_zero() {
            return WeylElement {
                algebra: self.clone(),
                terms: BTreeMap::new(),
            };
        }
        WeylElement::from_terms(self.clone(), [(WeylMonomial::unit(self.gens()), c)])
    }
}

/// Normal-form monomial z^γ ∂^β over the generator grid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub z: Vec<u32>,
    pub d: Vec<u32>,
}

impl WeylMonomial {
    pub fn unit(gens: usize) -> Self {
        WeylMonomial {
            z: vec![0; gens],
            d: vec![0; gens],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.z.iter().all(|&e| e == 0) && self.d.iter().all(|&e| e == 0)
    }
}

/// Normal-ordered polynomial differential operator with ParamPoly
/// coefficients. Products of normal-form elements are returned in normal
/// form via the finite rewriting
/// ∂^β z^γ = Σ_c C(β,c) C(γ,c) c! z^{γ−c} ∂^{β−c} (componentwise).
#[derive(Clone, Debug)]
pub struct WeylElement {
    algebra: WeylAlgebra,
    terms: BTreeMap<WeylMonomial, ParamPoly>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        // same generator grid: compare term maps (coefficient equality is
        // already insensitive to the declared parameter set for constants)
        if self.algebra.rows() == other.algebra.rows()
            && self.algebra.flavors() == other.algebra.flavors()
        {
            return self.terms == other.terms;
        }
        if self.is_scalar() && other.is_scalar() {
            return self.scalar_part() == other.scalar_part();
        }
        false
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn from_terms(
        algebra: WeylAlgebra,
        terms: impl IntoIterator<Item = (WeylMonomial, ParamPoly)>,
    ) -> Self {
        let gens = algebra.gens();
        let mut map: BTreeMap<WeylMonomial, ParamPoly> = BTreeMap::new();
        for (m, c) in terms {
            assert!(m.z.len() == gens && m.d.len() == gens, "monomial dimension");
            let entry = map.entry(m).or_insert_with(ParamPoly::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        WeylElement {
            algebra,
            terms: map,
        }
    }

    pub fn algebra(&self) -> &WeylAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(WeylMonomial::is_unit)
    }

    /// Coefficient of the unit monomial.
    pub fn scalar_part(&self) -> ParamPoly {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(ParamPoly::zero)
    }

    fn unify(&self, other: &WeylElement) -> Result<WeylAlgebra, AlgebraError> {
        if self.algebra.same(&other.algebra) {
            Ok(self.algebra.clone())
        } else if self.is_scalar() && self.algebra.gens() == 0 {
            Ok(other.algebra.clone())
        } else if other.is_scalar() && other.algebra.gens() == 0 {
            Ok(self.algebra.clone())
        } else {
            Err(AlgebraError::usage(
                "dimension mismatch: Weyl elements over different generator grids",
            ))
        }
    }

    fn rebased(&self, algebra: &WeylAlgebra) -> WeylElement {
        if self.algebra.same(algebra) {
            return self.clone();
        }
        let mut terms = BTreeMap::new();
        for c in self.terms.values() {
            let entry = terms
                .entry(WeylMonomial::unit(algebra.gens()))
                .or_insert_with(ParamPoly::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c: &mut ParamPoly| !c.is_zero());
        WeylElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn checked_add(&self, rhs: &WeylElement) -> Result<WeylElement, AlgebraError> {
        let algebra = self.unify(rhs)?;
        let mut terms = self.rebased(&algebra).terms;
        for (m, c) in &rhs.rebased(&algebra).terms {
            let entry = terms.entry(m.clone()).or_insert_with(ParamPoly::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(WeylElement { algebra, terms })
    }

    /// Normal-ordered product; usage error on mismatched generator grids.
    pub fn checked_mul(&self, rhs: &WeylElement) -> Result<WeylElement, AlgebraError> {
        let algebra = self.unify(rhs)?;
        let a = self.rebased(&algebra);
        let b = rhs.rebased(&algebra);
        let gens = algebra.gens();
        let mut terms: BTreeMap<WeylMonomial, ParamPoly> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let coeff = ca.mul(cb);
                if coeff.is_zero() {
                    continue;
                }
                // contract ∂^β (from ma) against z^γ (from mb)
                let active: Vec<usize> = (0..gens)
                    .filter(|&g| ma.d[g] > 0 && mb.z[g] > 0)
                    .collect();
                let mut contraction = vec![0u32; active.len()];
                loop {
                    let mut factor: u128 = 1;
                    for (slot, &g) in active.iter().enumerate() {
                        let c = contraction[slot];
                        factor *= binomial(ma.d[g], c) * binomial(mb.z[g], c) * fact_u128(c);
                    }
                    let mut mono = WeylMonomial::unit(gens);
                    for g in 0..gens {
                        mono.z[g] = ma.z[g] + mb.z[g];
                        mono.d[g] = ma.d[g] + mb.d[g];
                    }
                    for (slot, &g) in active.iter().enumerate() {
                        mono.z[g] -= contraction[slot];
                        mono.d[g] -= contraction[slot];
                    }
                    let c = coeff.scale_int(factor as i64);
                    let entry = terms.entry(mono).or_insert_with(ParamPoly::zero);
                    *entry = entry.add(&c);

                    // advance the componentwise contraction counter
                    let mut slot = 0;
                    loop {
                        if slot == active.len() {
                            break;
                        }
                        let g = active[slot];
                        if contraction[slot] < ma.d[g].min(mb.z[g]) {
                            contraction[slot] += 1;
                            break;
                        }
                        contraction[slot] = 0;
                        slot += 1;
                    }
                    if slot == active.len() {
                        break;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(WeylElement { algebra, terms })
    }

    /// Act on a commutative polynomial in z (an element with no ∂ factors),
    /// with ∂ as partial derivative. Cross-checks that normal ordering is an
    /// operator identity, not just a rewriting convention.
    pub fn apply(&self, f: &WeylElement) -> WeylElement {
        assert!(
            f.terms.keys().all(|m| m.d.iter().all(|&e| e == 0)),
            "apply target must be a polynomial in z only"
        );
        let algebra = self.unify(f).expect("apply: algebra mismatch");
        let a = self.rebased(&algebra);
        let b = f.rebased(&algebra);
        let gens = algebra.gens();
        let mut terms: BTreeMap<WeylMonomial, ParamPoly> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            'target: for (mb, cb) in &b.terms {
                let mut factor: u128 = 1;
                let mut mono = WeylMonomial::unit(gens);
                for g in 0..gens {
                    if mb.z[g] < ma.d[g] {
                        continue 'target; // derivative kills the monomial
                    }
                    factor *= crate::ring::falling(mb.z[g], ma.d[g]);
                    mono.z[g] = ma.z[g] + mb.z[g] - ma.d[g];
                }
                let c = ca.mul(cb).scale_int(factor as i64);
                let entry = terms.entry(mono).or_insert_with(ParamPoly::zero);
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        WeylElement { algebra, terms }
    }

    /// Substitute rational values for (some) coefficient parameters.
    pub fn substitute_params(
        &self,
        bindings: &BTreeMap<String, Rational>,
    ) -> WeylElement {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = c.substitute(bindings);
            if !c.is_zero() {
                terms.insert(m.clone(), c);
            }
        }
        WeylElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// Swap the (row, flavor) indexing of every generator; defined only on a
    /// square grid. Used to compare realizations built with transposed
    /// generator conventions.
    pub fn transpose_grid(&self) -> WeylElement {
        let rows = self.algebra.rows();
        let flavors = self.algebra.flavors();
        assert_eq!(rows, flavors, "transpose_grid needs a square generator grid");
        let transposed = WeylAlgebra::new(flavors, rows, self.algebra.params().clone());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut mono = WeylMonomial::unit(self.algebra.gens());
            for r in 0..rows {
                for f in 0..flavors {
                    mono.z[f * rows + r] = m.z[r * flavors + f];
                    mono.d[f * rows + r] = m.d[r * flavors + f];
                }
            }
            terms.insert(mono, c.clone());
        }
        WeylElement {
            algebra: transposed,
            terms,
        }
    }
}

fn fact_u128(n: u32) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

impl Ring for WeylElement {
    fn zero() -> Self {
        WeylElement {
            algebra: WeylAlgebra::new(0, 0, ParamSet::empty()),
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        let algebra = WeylAlgebra::new(0, 0, ParamSet::empty());
        algebra.scalar(ParamPoly::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("WeylElement::add")
    }

    fn neg(&self) -> Self {
        WeylElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("WeylElement::mul")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_int(n: i64) -> Self {
        let algebra = WeylAlgebra::new(0, 0, ParamSet::empty());
        algebra.scalar(ParamPoly::from_int(n))
    }

    fn try_div_int(&self, n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.try_div_int(n)?);
        }
        Some(WeylElement {
            algebra: self.algebra.clone(),
            terms,
        })
    }
}

impl WeylElement {
    fn gen_name(&self, base: &str, g: usize) -> String {
        let flavors = self.algebra.flavors();
        if flavors <= 1 {
            format!("{base}_{}", g / flavors.max(1) + 1)
        } else {
            format!("{base}_{{{},{}}}", g / flavors + 1, g % flavors + 1)
        }
    }

    pub fn monomial_string(&self, m: &WeylMonomial) -> String {
        let mut parts = Vec::new();
        for (g, &e) in m.z.iter().enumerate() {
            if e > 0 {
                parts.push(format!("{}^{}", self.gen_name("z", g), e));
            }
        }
        for (g, &e) in m.d.iter().enumerate() {
            if e > 0 {
                parts.push(format!("{}^{}", self.gen_name("∂", g), e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", self.monomial_string(m))?;
            }
            first = false;
        }
        Ok(())
    }
}

impl TermView for WeylElement {
    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(m, c)| format!("({c}) {}", self.monomial_string(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use proptest::prelude::*;

    fn algebra2() -> WeylAlgebra {
        WeylAlgebra::new(2, 1, ParamSet::empty())
    }

    #[test]
    fn canonical_commutation() {
        let w = algebra2();
        let (z, d) = (w.z(0, 0), w.d(0, 0));
        // ∂ z = z ∂ + 1
        let prod = d.mul(&z);
        let want = z.mul(&d).add(&WeylElement::one());
        assert_eq!(prod, want);
        // distinct generators commute
        let zv = w.z(1, 0);
        assert_eq!(d.mul(&zv), zv.mul(&d));
    }

    #[test]
    fn iterated_swap() {
        let w = algebra2();
        let (z, d) = (w.z(0, 0), w.d(0, 0));
        let d2 = d.mul(&d);
        let z2 = z.mul(&z);
        // ∂² z² = z²∂² + 4 z∂ + 2
        let got = d2.mul(&z2);
        let want = z2
            .mul(&d2)
            .add(&z.mul(&d).scale_int(4))
            .add(&WeylElement::from_int(2));
        assert_eq!(got, want);
    }

    #[test]
    fn apply_examples() {
        let w = algebra2();
        let (z, d) = (w.z(0, 0), w.d(0, 0));
        let z2 = z.mul(&z);
        // Euler operator: (z∂) z² = 2 z²
        assert_eq!(z.mul(&d).apply(&z2), z2.scale_int(2));
        // ∂ 1 = 0
        assert!(d.apply(&WeylElement::one().rebased(&w)).is_zero());
        // (z_u ∂_v) z_v = z_u
        let (zu, zv, dv) = (w.z(0, 0), w.z(1, 0), w.d(1, 0));
        assert_eq!(zu.mul(&dv).apply(&zv), zu);
    }

    #[test]
    fn grid_mismatch_is_usage_error() {
        let a = WeylAlgebra::new(1, 1, ParamSet::empty());
        let b = WeylAlgebra::new(2, 1, ParamSet::empty());
        let err = a.z(0, 0).checked_mul(&b.z(1, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::Usage(_)));
    }

    #[test]
    fn distinct_elements_act_distinctly_on_a_truncated_basis() {
        // equality of normal forms ⟺ equal action on all z-monomials up to
        // the combined degree; smoke-tested on a few unequal pairs
        let w = algebra2();
        let (z, d) = (w.z(0, 0), w.d(0, 0));
        let pairs = [
            (z.mul(&d), d.mul(&z)),
            (d.clone(), d.mul(&d)),
            (z.mul(&d).scale_int(2), z.mul(&d)),
        ];
        for (p, q) in pairs {
            assert_ne!(p, q);
            let mut separated = false;
            for e0 in 0..=3u32 {
                for e1 in 0..=3u32 {
                    let mono = WeylElement::from_terms(
                        w.clone(),
                        [(
                            WeylMonomial {
                                z: vec![e0, e1],
                                d: vec![0, 0],
                            },
                            ParamPoly::one(),
                        )],
                    );
                    if p.apply(&mono) != q.apply(&mono) {
                        separated = true;
                    }
                }
            }
            assert!(separated, "unequal operators must differ on some monomial");
        }
    }

    fn arb_weyl() -> impl Strategy<Value = WeylElement> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, 2),
                proptest::collection::vec(0u32..3, 2),
                -3i64..4,
            ),
            0..4,
        )
        .prop_map(|terms| {
            WeylElement::from_terms(
                algebra2(),
                terms.into_iter().map(|(z, d, c)| {
                    (
                        WeylMonomial { z, d },
                        ParamPoly::constant_rational(rat(c)),
                    )
                }),
            )
        })
    }

    fn arb_zpoly() -> impl Strategy<Value = WeylElement> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -3i64..4), 0..4)
            .prop_map(|terms| {
                WeylElement::from_terms(
                    algebra2(),
                    terms.into_iter().map(|(z, c)| {
                        (
                            WeylMonomial { z, d: vec![0, 0] },
                            ParamPoly::constant_rational(rat(c)),
                        )
                    }),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn associativity(p in arb_weyl(), q in arb_weyl(), r in arb_weyl()) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        }

        #[test]
        fn action_compatibility(p in arb_weyl(), q in arb_weyl(), f in arb_zpoly()) {
            // apply(pq, f) = apply(p, apply(q, f)): normal ordering is
            // correct by construction
            prop_assert_eq!(p.mul(&q).apply(&f), p.apply(&q.apply(&f)));
        }
    }
}
