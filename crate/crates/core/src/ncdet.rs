//! Matrices over an arbitrary ring: column-, row- and symmetric
//! determinants, minors, Cauchy–Binet left-hand sides, quantum corrections,
//! permutation actions and commutation-hypothesis predicates.

use std::fmt;

use crate::error::AlgebraError;
use crate::ring::Ring;

/// Rectangular matrix with entries in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMatrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> NCMatrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        NCMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        NCMatrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn zero_matrix(rows: usize, cols: usize) -> Self {
        NCMatrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> NCMatrix<R> {
        NCMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &NCMatrix<R>) -> NCMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        NCMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    /// Ordinary matrix product; entry products taken in left-to-right order.
    pub fn mat_mul(&self, rhs: &NCMatrix<R>) -> NCMatrix<R> {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        NCMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> NCMatrix<S> {
        NCMatrix::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    /// Submatrix with the given rows and columns (0-based, strictly
    /// increasing), in the induced order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<NCMatrix<R>, AlgebraError> {
        for w in [rows, cols] {
            if w.windows(2).any(|p| p[0] >= p[1]) {
                return Err(AlgebraError::usage("minor index sets must be strictly increasing"));
            }
        }
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(AlgebraError::usage("minor index out of range"));
        }
        Ok(NCMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        }))
    }
}

/// Permutation of {0, …, n−1} stored as an image sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(AlgebraError::usage("not a permutation"));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.image.len() {
            for j in i + 1..self.image.len() {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All n! permutations in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    image: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// Which noncommutative determinant to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetVariant {
    Col,
    Row,
    Sym,
}

impl fmt::Display for DetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetVariant::Col => write!(f, "col"),
            DetVariant::Row => write!(f, "row"),
            DetVariant::Sym => write!(f, "sym"),
        }
    }
}

/// col-det: Σ_σ sgn(σ) M_{σ(1)1} ⋯ M_{σ(n)n} (ordered product over columns);
/// row-det: Σ_σ sgn(σ) M_{1σ(1)} ⋯ M_{nσ(n)};
/// sym-det: (1/n!) Σ_{σ,τ} sgn(σ)sgn(τ) M_{σ(1)τ(1)} ⋯ M_{σ(n)τ(n)},
/// which demands rational division and reports a domain error without it.
pub fn nc_det<R: Ring>(variant: DetVariant, m: &NCMatrix<R>) -> Result<R, AlgebraError> {
    if m.rows() != m.cols() {
        return Err(AlgebraError::usage("determinant of a non-square matrix"));
    }
    let n = m.rows();
    let perms = Permutation::all(n);
    match variant {
        DetVariant::Col => {
            let mut acc = R::zero();
            for sigma in &perms {
                let factors: Vec<R> = (0..n).map(|i| m.get(sigma.apply(i), i).clone()).collect();
                acc = acc.add(&R::ordered_product(&factors).scale_int(sigma.sign()));
            }
            Ok(acc)
        }
        DetVariant::Row => {
            let mut acc = R::zero();
            for sigma in &perms {
                let factors: Vec<R> = (0..n).map(|i| m.get(i, sigma.apply(i)).clone()).collect();
                acc = acc.add(&R::ordered_product(&factors).scale_int(sigma.sign()));
            }
            Ok(acc)
        }
        DetVariant::Sym => {
            let mut acc = R::zero();
            for sigma in &perms {
                for tau in &perms {
                    let factors: Vec<R> = (0..n)
                        .map(|i| m.get(sigma.apply(i), tau.apply(i)).clone())
                        .collect();
                    acc = acc
                        .add(&R::ordered_product(&factors).scale_int(sigma.sign() * tau.sign()));
                }
            }
            let nfact: i64 = (1..=n as i64).product::<i64>().max(1);
            acc.try_div_int(nfact).ok_or_else(|| {
                AlgebraError::domain("sym-det requires rational division in the ring")
            })
        }
    }
}

/// All n-element subsets of {0, …, m−1}, each strictly increasing.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(start: usize, m: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in start..m {
            current.push(v);
            rec(v + 1, m, n, current, out);
            current.pop();
        }
    }
    if n <= m {
        rec(0, m, n, &mut current, &mut out);
    }
    out
}

/// Σ over n-subsets L of `{1..m}` of det(X with columns L) · det(Y with
/// rows L) in the chosen variant; the empty sum (n > m) is zero.
pub fn cauchy_binet_lhs<R: Ring>(
    variant: DetVariant,
    x: &NCMatrix<R>,
    y: &NCMatrix<R>,
) -> Result<R, AlgebraError> {
    let n = x.rows();
    let m = x.cols();
    if y.rows() != m || y.cols() != n {
        return Err(AlgebraError::usage("cauchy_binet_lhs needs shapes n×m and m×n"));
    }
    let all_rows: Vec<usize> = (0..n).collect();
    let mut acc = R::zero();
    for l in subsets(m, n) {
        let xl = x.minor(&all_rows, &l)?;
        let yl = y.minor(&l, &all_rows)?;
        let prod = nc_det(variant, &xl)?.mul(&nc_det(variant, &yl)?);
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// Quantum correction: Q^col_ij = A_ij (n−j), Q^row_ij = A_ij (i−1),
/// with 1-based i, j as in the defining formulas.
pub fn q_correction<R: Ring>(variant: DetVariant, a: &NCMatrix<R>) -> Result<NCMatrix<R>, AlgebraError> {
    if a.rows() != a.cols() {
        return Err(AlgebraError::usage("q_correction needs a square matrix"));
    }
    let n = a.rows();
    Ok(match variant {
        DetVariant::Col => NCMatrix::from_fn(n, n, |i, j| {
            a.get(i, j).scale_int((n - 1 - j) as i64)
        }),
        DetVariant::Row => NCMatrix::from_fn(n, n, |i, j| a.get(i, j).scale_int(i as i64)),
        DetVariant::Sym => panic!("no sym quantum correction"),
    })
}

/// Which index a permutation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermuteSide {
    Rows,
    Cols,
}

/// (^τM)_ij = M_{τ(i)j} (rows) or (M^τ)_ij = M_{iτ(j)} (cols).
pub fn permute<R: Ring>(
    m: &NCMatrix<R>,
    tau: &Permutation,
    side: PermuteSide,
) -> Result<NCMatrix<R>, AlgebraError> {
    let expected = match side {
        PermuteSide::Rows => m.rows(),
        PermuteSide::Cols => m.cols(),
    };
    if tau.len() != expected {
        return Err(AlgebraError::usage("permutation size does not match matrix"));
    }
    Ok(match side {
        PermuteSide::Rows => NCMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            m.get(tau.apply(i), j).clone()
        }),
        PermuteSide::Cols => NCMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            m.get(i, tau.apply(j)).clone()
        }),
    })
}

/// Outcome of a single commutation predicate: true, or false with the first
/// violating index tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Predicate {
    fn ok() -> Self {
        Predicate {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        Predicate {
            holds: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.holds, &self.witness) {
            (true, _) => write!(f, "holds"),
            (false, Some(w)) => write!(f, "fails at {w:?}"),
            (false, None) => write!(f, "fails"),
        }
    }
}

/// Commutation hypotheses of the Cauchy–Binet propositions, each checked
/// exhaustively over index tuples with a first-failure witness.
#[derive(Clone, Debug)]
pub struct CommutationReport {
    /// [X_ij, X_kl] = [X_kj, X_il] for all tuples (swap of row indices)
    pub x_weakly_row_symmetric: Predicate,
    /// weak row symmetry plus same-column commutation [X_ij, X_kj] = 0
    pub x_row_pseudo_commutative: Predicate,
    /// [X_ij, X_kl] = [X_il, X_kj] plus same-row commutation
    pub x_column_pseudo_commutative: Predicate,
    pub y_weakly_row_symmetric: Predicate,
    pub y_row_pseudo_commutative: Predicate,
    /// [Y_ij, Y_kl] = [Y_il, Y_kj] plus same-row commutation
    pub y_column_pseudo_commutative: Predicate,
    /// [X_ij, Y_kl] = −A_il B_kj
    pub xy_relation: Predicate,
    /// [X_ij, A_kl] − [X_kj, A_il] = 0
    pub xa_row_symmetric: Predicate,
    /// [Y_ij, A_kl] − [Y_il, A_kj] = 0
    pub ya_column_symmetric: Predicate,
    /// entries of B commute with every entry of X, Y, A and B
    pub b_central: Predicate,
}

impl CommutationReport {
    /// Hypotheses of the column-variant oscillator representation.
    pub fn col_hypotheses_hold(&self) -> bool {
        self.x_row_pseudo_commutative.holds
            && self.xy_relation.holds
            && self.xa_row_symmetric.holds
            && self.b_central.holds
    }

    /// Hypotheses of the row-variant oscillator representation.
    pub fn row_hypotheses_hold(&self) -> bool {
        self.y_column_pseudo_commutative.holds
            && self.xy_relation.holds
            && self.ya_column_symmetric.holds
            && self.b_central.holds
    }

    /// Hypotheses of the Grassmann representation, column variant.
    pub fn grassmann_col_hypotheses_hold(&self) -> bool {
        self.x_row_pseudo_commutative.holds
            && self.y_row_pseudo_commutative.holds
            && self.xy_relation.holds
            && self.xa_row_symmetric.holds
            && self.ya_column_symmetric.holds
            && self.b_central.holds
    }
}

fn check_pairs<R: Ring>(
    m: &NCMatrix<R>,
    same_index_vanishes: Option<PermuteSide>,
    swap: PermuteSide,
) -> Predicate {
    // swap = Rows: [M_ij, M_kl] = [M_kj, M_il]; swap = Cols: [M_ij, M_kl] = [M_il, M_kj]
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for k in 0..m.rows() {
                for l in 0..m.cols() {
                    let lhs = m.get(i, j).commutator(m.get(k, l));
                    let rhs = match swap {
                        PermuteSide::Rows => m.get(k, j).commutator(m.get(i, l)),
                        PermuteSide::Cols => m.get(i, l).commutator(m.get(k, j)),
                    };
                    if lhs != rhs {
                        return Predicate::fail(vec![i, j, k, l]);
                    }
                }
            }
        }
    }
    if let Some(side) = same_index_vanishes {
        match side {
            // pseudo-commutative extra condition: same column (row swap case)
            PermuteSide::Rows => {
                for j in 0..m.cols() {
                    for i in 0..m.rows() {
                        for k in 0..m.rows() {
                            if !m.get(i, j).commutator(m.get(k, j)).is_zero() {
                                return Predicate::fail(vec![i, j, k, j]);
                            }
                        }
                    }
                }
            }
            PermuteSide::Cols => {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        for l in 0..m.cols() {
                            if !m.get(i, j).commutator(m.get(i, l)).is_zero() {
                                return Predicate::fail(vec![i, j, i, l]);
                            }
                        }
                    }
                }
            }
        }
    }
    Predicate::ok()
}

/// Check every commutation hypothesis on the quadruple (X, Y, A, B).
pub fn commutation_report<R: Ring>(
    x: &NCMatrix<R>,
    y: &NCMatrix<R>,
    a: &NCMatrix<R>,
    b: &NCMatrix<R>,
) -> Result<CommutationReport, AlgebraError> {
    let n = x.rows();
    let m = x.cols();
    if y.rows() != m || y.cols() != n || a.rows() != n || a.cols() != n || b.rows() != m || b.cols() != m
    {
        return Err(AlgebraError::usage(
            "commutation_report expects X n×m, Y m×n, A n×n, B m×m",
        ));
    }

    let xy_relation = 'rel: {
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..n {
                        let lhs = x.get(i, j).commutator(y.get(k, l));
                        let rhs = a.get(i, l).mul(b.get(k, j)).neg();
                        if lhs != rhs {
                            break 'rel Predicate::fail(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        Predicate::ok()
    };

    let xa_row_symmetric = 'xa: {
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = x.get(i, j).commutator(a.get(k, l));
                        let rhs = x.get(k, j).commutator(a.get(i, l));
                        if lhs != rhs {
                            break 'xa Predicate::fail(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        Predicate::ok()
    };

    let ya_column_symmetric = 'ya: {
        for i in 0..m {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = y.get(i, j).commutator(a.get(k, l));
                        let rhs = y.get(i, l).commutator(a.get(k, j));
                        if lhs != rhs {
                            break 'ya Predicate::fail(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        Predicate::ok()
    };

    let b_central = 'bc: {
        let others: Vec<&NCMatrix<R>> = vec![x, y, a, b];
        for bi in 0..m {
            for bj in 0..m {
                for (which, other) in others.iter().enumerate() {
                    for i in 0..other.rows() {
                        for j in 0..other.cols() {
                            if !b.get(bi, bj).commutator(other.get(i, j)).is_zero() {
                                break 'bc Predicate::fail(vec![bi, bj, which, i, j]);
                            }
                        }
                    }
                }
            }
        }
        Predicate::ok()
    };

    Ok(CommutationReport {
        x_weakly_row_symmetric: check_pairs(x, None, PermuteSide::Rows),
        x_row_pseudo_commutative: check_pairs(x, Some(PermuteSide::Rows), PermuteSide::Rows),
        x_column_pseudo_commutative: check_pairs(x, Some(PermuteSide::Cols), PermuteSide::Cols),
        y_weakly_row_symmetric: check_pairs(y, None, PermuteSide::Rows),
        y_row_pseudo_commutative: check_pairs(y, Some(PermuteSide::Rows), PermuteSide::Rows),
        y_column_pseudo_commutative: check_pairs(y, Some(PermuteSide::Cols), PermuteSide::Cols),
        xy_relation,
        xa_row_symmetric,
        ya_column_symmetric,
        b_central,
    })
}
