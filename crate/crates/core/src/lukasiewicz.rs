//! Bracket symbols, their rewriting recursion, closed-form Łukasiewicz path
//! weights, excursion enumeration, and the Fock/holomorphic weight oracles.
//!
//! A symbol ⟨ν_1 … ν_t | ν_{t+1} … ν_n⟩ carries a level t; entries left of
//! the bar are ≥ −1, entries right of the bar are ≥ 0. Symbols of maximal
//! level correspond to lattice paths via jump_i = −ν_i, with heights
//! h_i = h_{i−1} + jump_i required to stay nonnegative.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::fock::{chi, gaussian_pair_reduce, CoherentExpr, FockElement};
use crate::ring::{Rational, Ring};

/// Bracket symbol: a level and an entry sequence of fixed length n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LukasSymbol {
    level: usize,
    entries: Vec<i64>,
}

impl LukasSymbol {
    pub fn new(level: usize, entries: Vec<i64>) -> Result<Self, AlgebraError> {
        if level > entries.len() {
            return Err(AlgebraError::usage("symbol level exceeds its length"));
        }
        for (i, &v) in entries.iter().enumerate() {
            let bound = if i < level { -1 } else { 0 };
            if v < bound {
                return Err(AlgebraError::usage(format!(
                    "entry ν_{} = {v} below the bound {bound} for level {level}",
                    i + 1
                )));
            }
        }
        Ok(LukasSymbol { level, entries })
    }

    /// The norm-zero seed ⟨ | 0 … 0⟩ every expansion starts from.
    pub fn seed(n: usize) -> Self {
        LukasSymbol {
            level: 0,
            entries: vec![0; n],
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// ν_1 + ⋯ + ν_n.
    pub fn norm(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Σ of the entries right of the bar.
    pub fn height(&self) -> i64 {
        self.entries[self.level..].iter().sum()
    }
}

impl fmt::Display for LukasSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_run = |run: &[i64]| {
            run.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "⟨{} | {}⟩",
            fmt_run(&self.entries[..self.level]),
            fmt_run(&self.entries[self.level..])
        )
    }
}

/// Integer-linear combination of symbols sharing one length and norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCombo {
    n: usize,
    terms: BTreeMap<LukasSymbol, i64>,
}

impl SymbolCombo {
    pub fn single(symbol: LukasSymbol) -> Self {
        let n = symbol.len();
        let mut terms = BTreeMap::new();
        terms.insert(symbol, 1);
        SymbolCombo { n, terms }
    }

    pub fn seed(n: usize) -> Self {
        SymbolCombo::single(LukasSymbol::seed(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LukasSymbol, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, symbol: &LukasSymbol) -> i64 {
        self.terms.get(symbol).copied().unwrap_or(0)
    }

    /// The common level of all symbols, when there is one.
    pub fn uniform_level(&self) -> Option<usize> {
        let mut levels = self.terms.keys().map(LukasSymbol::level);
        let first = levels.next()?;
        levels.all(|l| l == first).then_some(first)
    }
}

/// One breadth-first rewriting step: every symbol of level t is expanded to
/// level t+1, moving the leftmost unbarred entry e across the bar unchanged,
/// plus one term per later slot k where the bar entry becomes −1 and e+1 is
/// added onto ν_k. Norm is preserved termwise; integer coefficients combine.
pub fn expand_step(combo: &SymbolCombo) -> Result<SymbolCombo, AlgebraError> {
    let level = combo
        .uniform_level()
        .ok_or_else(|| AlgebraError::usage("expand_step needs all symbols at one level"))?;
    if level >= combo.n {
        return Err(AlgebraError::usage(
            "expand_step: symbols already at maximal level",
        ));
    }
    let t = level; // 0-based position of the entry crossing the bar
    let mut terms: BTreeMap<LukasSymbol, i64> = BTreeMap::new();
    let mut push = |symbol: LukasSymbol, c: i64| {
        let entry = terms.entry(symbol).or_insert(0);
        *entry += c;
    };
    for (sym, &c) in &combo.terms {
        let e = sym.entries[t];
        // bar moves right past e
        push(
            LukasSymbol {
                level: t + 1,
                entries: sym.entries.clone(),
            },
            c,
        );
        // redistribution terms: slot t becomes −1, slot k gains e+1
        for k in t + 1..combo.n {
            let mut entries = sym.entries.clone();
            entries[t] = -1;
            entries[k] += e + 1;
            push(
                LukasSymbol {
                    level: t + 1,
                    entries,
                },
                c,
            );
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(SymbolCombo { n: combo.n, terms })
}

/// Fully expand the seed ⟨ | 0 … 0⟩ to level n; the resulting coefficients
/// are the recursion's answer for every maximal-level symbol.
pub fn expand_seed_fully(n: usize) -> SymbolCombo {
    let mut combo = SymbolCombo::seed(n);
    for _ in 0..n {
        combo = expand_step(&combo).expect("seed expansion stays in range");
    }
    combo
}

/// Lattice path stored as its jump sequence (jump_i = −ν_i ≤ +1); heights
/// are always derived, never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LukasPath {
    jumps: Vec<i64>,
}

impl LukasPath {
    pub fn from_jumps(jumps: Vec<i64>) -> Result<Self, AlgebraError> {
        if jumps.iter().any(|&j| j > 1) {
            return Err(AlgebraError::usage("Łukasiewicz jumps are bounded above by +1"));
        }
        Ok(LukasPath { jumps })
    }

    /// The path of the symbol ⟨ν_1 … ν_n | ⟩, jump_i = −ν_i.
    pub fn from_nu(nu: &[i64]) -> Self {
        LukasPath {
            jumps: nu.iter().map(|&v| -v).collect(),
        }
    }

    pub fn nu(&self) -> Vec<i64> {
        self.jumps.iter().map(|&j| -j).collect()
    }

    pub fn jumps(&self) -> &[i64] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// h_0 = 0, h_i = h_{i−1} + jump_i.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.jumps.len() + 1);
        h.push(0);
        for &j in &self.jumps {
            h.push(h.last().unwrap() + j);
        }
        h
    }

    /// Nonnegative heights throughout.
    pub fn is_admissible(&self) -> bool {
        self.heights().iter().all(|&h| h >= 0)
    }

    /// Admissible and back to height zero: a Łukasiewicz excursion.
    pub fn is_excursion(&self) -> bool {
        self.is_admissible() && *self.heights().last().unwrap() == 0
    }
}

fn factorial_i64(n: i64) -> i64 {
    (1..=n).product::<i64>().max(1)
}

/// Closed-form weight at level t:
/// c(γ) = h_t! · Π_{i ≤ t, h_i ≤ h_{i−1}} h_{i−1}!/h_i!.
/// Inadmissible paths give 0 by convention (mirroring the vanishing of the
/// vacuum weight); at t = n a nonzero final height also gives 0.
pub fn c_formula(path: &LukasPath, t: usize) -> i64 {
    assert!(t <= path.len(), "level exceeds path length");
    let h = path.heights();
    if h[..=t].iter().any(|&x| x < 0) {
        return 0;
    }
    if t == path.len() && h[t] != 0 {
        return 0;
    }
    let mut c = factorial_i64(h[t]);
    for i in 1..=t {
        if h[i] <= h[i - 1] {
            c *= factorial_i64(h[i - 1]) / factorial_i64(h[i]);
        }
    }
    c
}

/// All Łukasiewicz excursions of length n (steps ≤ +1, heights ≥ 0, ending
/// at 0), each exactly once, in lexicographic jump order.
pub fn enumerate_excursions(n: usize) -> Vec<LukasPath> {
    let mut out = Vec::new();
    let mut jumps: Vec<i64> = Vec::with_capacity(n);
    fn rec(remaining: usize, height: i64, jumps: &mut Vec<i64>, out: &mut Vec<LukasPath>) {
        if remaining == 0 {
            if height == 0 {
                out.push(LukasPath {
                    jumps: jumps.clone(),
                });
            }
            return;
        }
        // reachability: can still get back to 0 only if height ≤ remaining steps
        // of −… any drop is allowed, so only the +1 cap constrains: to end at 0
        // we need height ≥ −(remaining−?) — dropping is unbounded, climbing is
        // capped at +1 per step, so height can always be shed; height must not
        // exceed what can be shed: any single step can shed it all. No pruning
        // beyond admissibility is required, but capping the climb keeps the
        // search finite.
        for jump in (-height..=1).rev() {
            jumps.push(jump);
            rec(remaining - 1, height + jump, jumps, out);
            jumps.pop();
        }
        let _ = out;
    }
    rec(n, 0, &mut jumps, &mut out);
    out.sort();
    out
}

/// Independent count of excursions by dynamic programming over
/// (steps placed, height): paths(0, 0) = 1,
/// paths(i, h) = Σ_{jump ≤ 1, h−jump ≥ 0} paths(i−1, h−jump).
pub fn count_excursions_dp(n: usize) -> u64 {
    // heights never exceed n
    let mut table = vec![vec![0u64; n + 2]; n + 1];
    table[0][0] = 1;
    for i in 1..=n {
        for h in 0..=n {
            // previous height p with jump = h − p ≤ 1 → p ≥ h − 1
            let lo = h.saturating_sub(1);
            table[i][h] = table[i - 1][lo..=n].iter().sum();
        }
    }
    table[n][0]
}

/// ⟨0| χ(ν_1) ⋯ χ(ν_n) |0⟩ through the Fock module; the recursion-free
/// oscillator oracle for c(γ).
pub fn fock_weight(path: &LukasPath) -> Rational {
    let mut acc: FockElement<Rational> = FockElement::one();
    for nu in path.nu() {
        let factor = match chi::<Rational>(nu) {
            Ok(f) => f,
            Err(_) => return Rational::zero(), // entries below −1 never occur for paths
        };
        acc = acc.mul_full(&factor);
    }
    acc.vacuum_expectation()
}

/// Iterated Gaussian reduction of the monomial Π_i χ_i(ν_i) with
/// χ_i(ν) = z̄_{i−1}^ν (ν ≥ 0) or z_i (ν = −1), under z_0 = z_n = 0: the
/// holomorphic oracle for c(γ).
pub fn holomorphic_weight(path: &LukasPath) -> Rational {
    let n = path.len();
    if n == 0 {
        return Rational::one();
    }
    let pairs = n - 1;
    let mut acc: CoherentExpr<Rational> = CoherentExpr::scalar(pairs, Rational::one());
    for (i, nu) in path.nu().into_iter().enumerate() {
        let i = i + 1; // 1-based factor index
        let factor = if nu >= 0 {
            if i == 1 {
                // z̄_0 = 0
                if nu == 0 {
                    CoherentExpr::scalar(pairs, Rational::one())
                } else {
                    return Rational::zero();
                }
            } else {
                CoherentExpr::zbar_power(pairs, i - 1, nu as u32, Rational::one())
            }
        } else {
            // ν = −1 ↦ z_i, and z_n = 0
            if i == n {
                return Rational::zero();
            }
            CoherentExpr::z_power(pairs, i, 1, Rational::one())
        };
        acc = acc.mul(&factor);
    }
    for j in 1..=pairs {
        acc = gaussian_pair_reduce(&acc, j);
    }
    debug_assert!(acc.is_constant());
    acc.constant_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn symbol_bounds_enforced() {
        assert!(LukasSymbol::new(1, vec![-1, 0, 2]).is_ok());
        // −1 right of the bar is out of range
        assert!(LukasSymbol::new(0, vec![-1, 0]).is_err());
        assert!(LukasSymbol::new(2, vec![-2, 0]).is_err());
    }

    #[test]
    fn expand_preserves_norm() {
        let combo = SymbolCombo::seed(3);
        let once = expand_step(&combo).unwrap();
        for (sym, _) in once.terms() {
            assert_eq!(sym.norm(), 0);
            assert_eq!(sym.level(), 1);
        }
    }

    #[test]
    fn expand_nonnegative_entry_keeps_single_symbol_shape() {
        // a symbol whose crossing entry is ≥ 0 contributes itself at the next
        // level with the same coefficient, plus redistribution terms with −1
        let sym = LukasSymbol::new(0, vec![2, 0]).unwrap();
        let combo = expand_step(&SymbolCombo::single(sym)).unwrap();
        let direct = LukasSymbol::new(1, vec![2, 0]).unwrap();
        assert_eq!(combo.coefficient(&direct), 1);
        let redistributed = LukasSymbol::new(1, vec![-1, 3]).unwrap();
        assert_eq!(combo.coefficient(&redistributed), 1);
        assert_eq!(combo.terms().count(), 2);
    }

    #[test]
    fn expand_at_maximal_level_is_usage_error() {
        let full = SymbolCombo::single(LukasSymbol::new(2, vec![0, 0]).unwrap());
        assert!(matches!(
            expand_step(&full),
            Err(AlgebraError::Usage(_))
        ));
    }

    #[test]
    fn recursion_matches_formula_for_n2() {
        let combo = expand_seed_fully(2);
        for (sym, &c) in combo.terms() {
            let path = LukasPath::from_nu(sym.entries());
            assert_eq!(c, c_formula(&path, 2), "symbol {sym}");
        }
        // ⟨−1 1|⟩ has weight 1
        let s = LukasSymbol::new(2, vec![-1, 1]).unwrap();
        assert_eq!(combo.coefficient(&s), 1);
    }

    #[test]
    fn formula_examples() {
        // flat path
        let flat = LukasPath::from_nu(&[0, 0, 0]);
        assert_eq!(c_formula(&flat, 3), 1);
        // ν = (−1, 1): heights 1, 0
        let p = LukasPath::from_nu(&[-1, 1]);
        assert_eq!(c_formula(&p, 2), 1);
        // the ten-step figure path
        let p = LukasPath::from_nu(&[-1, -1, 0, -1, 2, 0, -1, -1, 1, 2]);
        assert_eq!(c_formula(&p, 10), 36);
        // below-axis path vanishes
        let p = LukasPath::from_nu(&[1, -1]);
        assert_eq!(c_formula(&p, 2), 0);
    }

    #[test]
    fn excursion_counts_small() {
        assert_eq!(enumerate_excursions(1).len(), 1);
        assert_eq!(enumerate_excursions(2).len(), 2);
        assert_eq!(enumerate_excursions(3).len(), 5);
        for n in 0..=6 {
            assert_eq!(enumerate_excursions(n).len() as u64, count_excursions_dp(n));
        }
    }

    #[test]
    fn excursions_are_unique_and_valid() {
        let paths = enumerate_excursions(5);
        for p in &paths {
            assert!(p.is_excursion());
        }
        let mut dedup = paths.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), paths.len());
    }

    #[test]
    fn fock_weight_examples() {
        assert_eq!(fock_weight(&LukasPath::from_nu(&[-1, 1])), rat(1));
        assert_eq!(fock_weight(&LukasPath::from_nu(&[-1, -1, 2])), rat(2));
        // dipping path
        assert_eq!(fock_weight(&LukasPath::from_nu(&[1, -1])), rat(0));
    }

    #[test]
    fn holomorphic_weight_examples() {
        assert_eq!(holomorphic_weight(&LukasPath::from_nu(&[-1, 1])), rat(1));
        assert_eq!(holomorphic_weight(&LukasPath::from_nu(&[-1, -1, 2])), rat(2));
        assert_eq!(holomorphic_weight(&LukasPath::from_nu(&[1, -1])), rat(0));
    }

    #[test]
    fn four_way_agreement_small() {
        // all ν-sequences of length ≤ 4 with entries in {−1, …, n}
        for n in 1..=4usize {
            let expanded = expand_seed_fully(n);
            let mut sweep = vec![-1i64; n];
            loop {
                let path = LukasPath::from_nu(&sweep);
                let c = c_formula(&path, n);
                let from_recursion = LukasSymbol::new(n, sweep.clone())
                    .ok()
                    .map(|s| expanded.coefficient(&s))
                    .unwrap_or(0);
                assert_eq!(c, from_recursion, "recursion vs formula at {sweep:?}");
                assert_eq!(fock_weight(&path), rat(c), "fock vs formula at {sweep:?}");
                assert_eq!(
                    holomorphic_weight(&path),
                    rat(c),
                    "holomorphic vs formula at {sweep:?}"
                );
                // advance odometer
                let mut i = 0;
                while i < n {
                    if sweep[i] < n as i64 {
                        sweep[i] += 1;
                        break;
                    }
                    sweep[i] = -1;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
}
