//! Calibration sweeps: Berezin integration against independent determinant
//! oracles, the four-way Łukasiewicz weight agreement, and the
//! vacuum/ladder and operator/action oracle-independence checks.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::AlgebraError;
use crate::fock::{ladder_word, FockElement, Letter};
use crate::free_algebra::Alphabet;
use crate::grassmann::GrassmannElement;
use crate::lukasiewicz::{
    c_formula, count_excursions_dp, enumerate_excursions, expand_seed_fully, fock_weight,
    holomorphic_weight, LukasPath, LukasSymbol,
};
use crate::ncdet::{nc_det, DetVariant, NCMatrix};
use crate::ring::{ratio, Rational, Ring};
use crate::scalars::{ParamPoly, ParamSet};
use crate::weyl::{WeylAlgebra, WeylElement, WeylMonomial};

use super::substitution::DetRng;
use super::{combine_results, compare_sides, Status, VerificationResult};

/// Cofactor expansion along the first row: the independent commutative
/// determinant oracle.
pub fn det_cofactor(m: &NCMatrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Rational::zero();
    let rows: Vec<usize> = (1..n).collect();
    for j in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let sub = m.minor(&rows, &cols).expect("cofactor minor");
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&m.get(0, j).mul(&det_cofactor(&sub)).scale_int(sign));
    }
    acc
}

fn rand_rational(rng: &mut DetRng) -> Rational {
    let num = rng.int_in(-6, 6);
    let den = rng.int_in(1, 4);
    ratio(num, den)
}

/// ψ̄ M ψ over the paired generators, then exp, then the Berezin integral.
fn berezin_of_exp<R: Ring>(m: &NCMatrix<R>) -> Result<R, AlgebraError> {
    let n = m.rows();
    let mut quad = GrassmannElement::zero_with(2 * n);
    for i in 0..n {
        for j in 0..n {
            let c = m.get(i, j).clone();
            if c.is_zero() {
                continue;
            }
            let term = GrassmannElement::psi_bar(n, i + 1, c)
                .mul(&GrassmannElement::psi(n, j + 1, R::one()));
            quad = quad.add(&term);
        }
    }
    Ok(quad.exp_even()?.berezin_integral())
}

/// ∫ dψ_n … dψ_1 of the ordered product of linear forms: the coefficient of
/// ψ_1 ⋯ ψ_n with the sign fixed by the iterated-integral convention (+1 in
/// this generator order).
fn ordered_integral<R: Ring>(forms: &[GrassmannElement<R>]) -> R {
    let n = forms.len();
    let mut acc = GrassmannElement::scalar(n, R::one());
    for f in forms {
        acc = acc.mul(f);
    }
    acc.berezin_integral()
}

/// (ψM)_j = Σ_i ψ_i M_ij as an exterior element on n single-species
/// generators (bit i−1 is ψ_i).
fn psi_m_column<R: Ring>(m: &NCMatrix<R>, j: usize) -> GrassmannElement<R> {
    let n = m.rows();
    let mut acc = GrassmannElement::zero_with(n);
    for i in 0..n {
        let c = m.get(i, j).clone();
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&GrassmannElement::generator(n, i, c));
    }
    acc
}

/// (Mψ)_i = Σ_j M_ij ψ_j on the same generators.
fn m_psi_row<R: Ring>(m: &NCMatrix<R>, i: usize) -> GrassmannElement<R> {
    let n = m.cols();
    let mut acc = GrassmannElement::zero_with(n);
    for j in 0..n {
        let c = m.get(i, j).clone();
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&GrassmannElement::generator(n, j, c));
    }
    acc
}

/// Berezin calibration:
/// ∫D exp(ψ̄Mψ) = det M on random rational matrices (n ≤ 4);
/// ∫D exp(ψ̄Mψ) = sym-det M and the ordered-product formulas
/// ∫dψ…(ψM)_1⋯(ψM)_n = col-det M, ∫dψ…(Mψ)_1⋯(Mψ)_n = row-det M
/// on matrices of distinct free generators (n ≤ 3).
pub fn verify_berezin_calibration(
    samples: usize,
    seed: u64,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let mut rng = DetRng::new(seed);
    let mut parts = Vec::new();

    // commutative determinant, random matrices
    let mut worst: Option<(Rational, Rational)> = None;
    let mut failures = 0usize;
    for _ in 0..samples {
        let n = rng.int_in(1, 4) as usize;
        let m = NCMatrix::from_fn(n, n, |_, _| rand_rational(&mut rng));
        let lhs = berezin_of_exp(&m)?;
        let rhs = det_cofactor(&m);
        if lhs != rhs {
            failures += 1;
            if worst.is_none() {
                worst = Some((lhs, rhs));
            }
        }
    }
    {
        let (lhs, rhs) = worst.unwrap_or((Rational::zero(), Rational::zero()));
        let mut params = BTreeMap::new();
        params.insert("samples".to_string(), samples.to_string());
        let mut res = compare_sides("berezin_vs_det", params, &lhs, &rhs, started);
        if failures > 0 {
            res.status = Status::Fail;
        }
        parts.push(res);
    }

    // noncommutative: free generators
    for n in 1..=3usize {
        let names: Vec<String> = (0..n * n).map(|k| format!("g{k}")).collect();
        let alphabet = Alphabet::declare(names);
        let m = NCMatrix::from_fn(n, n, |i, j| alphabet.gen::<Rational>((i * n + j) as u32));

        let sym = nc_det(DetVariant::Sym, &m)?;
        let ber = berezin_of_exp(&m)?;
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), n.to_string());
        parts.push(compare_sides("berezin_vs_symdet", params.clone(), &ber, &sym, started));

        let col_forms: Vec<_> = (0..n).map(|j| psi_m_column(&m, j)).collect();
        let col_int = ordered_integral(&col_forms);
        let col = nc_det(DetVariant::Col, &m)?;
        parts.push(compare_sides("coldet_integral", params.clone(), &col_int, &col, started));

        let row_forms: Vec<_> = (0..n).map(|i| m_psi_row(&m, i)).collect();
        let row_int = ordered_integral(&row_forms);
        let row = nc_det(DetVariant::Row, &m)?;
        parts.push(compare_sides("rowdet_integral", params, &row_int, &row, started));
    }

    let mut params = BTreeMap::new();
    params.insert("samples".to_string(), samples.to_string());
    params.insert("seed".to_string(), seed.to_string());
    Ok(combine_results("berezin_calibration", params, parts, started))
}

/// Four-way agreement between the closed formula, the symbol recursion, the
/// Fock weight and the holomorphic weight: exhaustive for lengths ≤
/// `full_len`, randomized with `samples` draws per length up to `rand_len`,
/// plus excursion counts against dynamic programming and the fixed 10-step
/// path of weight 36.
pub fn verify_lukasiewicz_agreement(
    full_len: usize,
    rand_len: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let mut parts = Vec::new();
    let mut rng = DetRng::new(seed);

    let check_sequence = |nu: &[i64], expanded: &crate::lukasiewicz::SymbolCombo| -> bool {
        let n = nu.len();
        let path = LukasPath::from_nu(nu);
        let c = c_formula(&path, n);
        let rec = LukasSymbol::new(n, nu.to_vec())
            .ok()
            .map(|s| expanded.coefficient(&s))
            .unwrap_or(0);
        c == rec
            && fock_weight(&path) == Rational::from_int(c)
            && holomorphic_weight(&path) == Rational::from_int(c)
    };

    for n in 1..=full_len {
        let expanded = expand_seed_fully(n);
        let mut sweep = vec![-1i64; n];
        let mut failures = 0usize;
        let mut first: Option<Vec<i64>> = None;
        loop {
            if !check_sequence(&sweep, &expanded) {
                failures += 1;
                if first.is_none() {
                    first = Some(sweep.clone());
                }
            }
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
        let mut params = BTreeMap::new();
        params.insert("len".to_string(), n.to_string());
        params.insert("mode".to_string(), "exhaustive".to_string());
        let mut res = compare_sides(
            "four_way_agreement",
            params,
            &Rational::zero(),
            &Rational::zero(),
            started,
        );
        if failures > 0 {
            res.status = Status::Fail;
            res.first_discrepancy = Some(format!("ν = {:?}", first.unwrap()));
        }
        parts.push(res);
    }

    for n in (full_len + 1)..=rand_len {
        let expanded = expand_seed_fully(n);
        let mut failures = 0usize;
        let mut first: Option<Vec<i64>> = None;
        for _ in 0..samples {
            let nu: Vec<i64> = (0..n).map(|_| rng.int_in(-1, n as i64)).collect();
            if !check_sequence(&nu, &expanded) {
                failures += 1;
                if first.is_none() {
                    first = Some(nu);
                }
            }
        }
        let mut params = BTreeMap::new();
        params.insert("len".to_string(), n.to_string());
        params.insert("mode".to_string(), format!("random_{samples}"));
        let mut res = compare_sides(
            "four_way_agreement",
            params,
            &Rational::zero(),
            &Rational::zero(),
            started,
        );
        if failures > 0 {
            res.status = Status::Fail;
            res.first_discrepancy = Some(format!("ν = {:?}", first.unwrap()));
        }
        parts.push(res);
    }

    // excursion counts: recursive enumeration vs dynamic programming
    for n in 1..=rand_len.max(full_len) {
        let enumerated = enumerate_excursions(n).len() as u64;
        let counted = count_excursions_dp(n);
        let mut params = BTreeMap::new();
        params.insert("len".to_string(), n.to_string());
        parts.push(compare_sides(
            "excursion_count",
            params,
            &Rational::from_int(enumerated as i64),
            &Rational::from_int(counted as i64),
            started,
        ));
    }

    // the fixed figure path
    {
        let path = LukasPath::from_nu(&[-1, -1, 0, -1, 2, 0, -1, -1, 1, 2]);
        let mut params = BTreeMap::new();
        params.insert("path".to_string(), "ten_step_figure".to_string());
        parts.push(compare_sides(
            "figure_path_weight",
            params,
            &Rational::from_int(c_formula(&path, 10)),
            &Rational::from_int(36),
            started,
        ));
    }

    let mut params = BTreeMap::new();
    params.insert("full_len".to_string(), full_len.to_string());
    params.insert("rand_len".to_string(), rand_len.to_string());
    params.insert("samples".to_string(), samples.to_string());
    params.insert("seed".to_string(), seed.to_string());
    Ok(combine_results("lukasiewicz", params, parts, started))
}

/// Oracle independence:
/// random oscillator words evaluated through normal-ordered multiplication
/// agree with the raw ladder evaluation, also between excited states; and
/// weyl_mul is action-compatible on random operator/polynomial triples.
pub fn verify_oracle_independence(
    word_samples: usize,
    word_len: usize,
    weyl_samples: usize,
    seed: u64,
) -> Result<VerificationResult, AlgebraError> {
    let started = Instant::now();
    let mut rng = DetRng::new(seed);
    let mut parts = Vec::new();

    {
        let mut failures = 0usize;
        let mut first: Option<String> = None;
        for _ in 0..word_samples {
            let len = rng.int_in(0, word_len as i64) as usize;
            let word: Vec<Letter> = (0..len)
                .map(|_| {
                    if rng.int_in(0, 1) == 0 {
                        Letter::Create
                    } else {
                        Letter::Annihilate
                    }
                })
                .collect();
            let product = word.iter().fold(FockElement::<Rational>::one(), |acc, l| {
                acc.mul_full(&match l {
                    Letter::Create => FockElement::creation(1),
                    Letter::Annihilate => FockElement::annihilation(1),
                })
            });
            let p = rng.int_in(0, 3) as u32;
            let q = rng.int_in(0, 3) as u32;
            let vacuum_ok = product.vacuum_expectation() == ladder_word(0, &word, 0);
            let excited_ok = product.matrix_element(p, q) == ladder_word(p, &word, q);
            if !vacuum_ok || !excited_ok {
                failures += 1;
                if first.is_none() {
                    first = Some(format!("word {word:?} p={p} q={q}"));
                }
            }
        }
        let mut params = BTreeMap::new();
        params.insert("samples".to_string(), word_samples.to_string());
        params.insert("max_len".to_string(), word_len.to_string());
        let mut res = compare_sides(
            "vacuum_vs_ladder",
            params,
            &Rational::zero(),
            &Rational::zero(),
            started,
        );
        if failures > 0 {
            res.status = Status::Fail;
            res.first_discrepancy = first;
        }
        parts.push(res);
    }

    {
        let algebra = WeylAlgebra::new(2, 1, ParamSet::empty());
        let rand_weyl = |with_d: bool, rng: &mut DetRng| -> WeylElement {
            let terms: Vec<(WeylMonomial, ParamPoly)> = (0..rng.int_in(1, 3))
                .map(|_| {
                    let z = vec![rng.int_in(0, 2) as u32, rng.int_in(0, 2) as u32];
                    let d = if with_d {
                        vec![rng.int_in(0, 2) as u32, rng.int_in(0, 2) as u32]
                    } else {
                        vec![0, 0]
                    };
                    (
                        WeylMonomial { z, d },
                        ParamPoly::constant_rational(Rational::from_int(rng.int_in(-3, 3))),
                    )
                })
                .collect();
            WeylElement::from_terms(algebra.clone(), terms)
        };
        let mut failures = 0usize;
        for _ in 0..weyl_samples {
            let p = rand_weyl(true, &mut rng);
            let q = rand_weyl(true, &mut rng);
            let f = rand_weyl(false, &mut rng);
            if p.mul(&q).apply(&f) != p.apply(&q.apply(&f)) {
                failures += 1;
            }
        }
        let mut params = BTreeMap::new();
        params.insert("samples".to_string(), weyl_samples.to_string());
        let mut res = compare_sides(
            "weyl_action_compatibility",
            params,
            &Rational::zero(),
            &Rational::zero(),
            started,
        );
        if failures > 0 {
            res.status = Status::Fail;
            res.first_discrepancy = Some(format!("{failures} action mismatches"));
        }
        parts.push(res);
    }

    let mut params = BTreeMap::new();
    params.insert("seed".to_string(), seed.to_string());
    Ok(combine_results("oracle_independence", params, parts, started))
}
