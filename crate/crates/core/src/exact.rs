//! Exact integer/rational linear algebra kernel.
//!
//! Everything downstream (lattice pairings, Riemann–Roch, Zariski loops)
//! reduces to a handful of small-matrix computations that must be exact:
//! no floats, no tolerances. Integers are `num_bigint::BigInt`, rationals
//! are `num_rational::BigRational` (always reduced, positive denominator).
//!
//! The four nontrivial algorithms live here:
//! * determinant by fraction-free (Bareiss) elimination,
//! * negative-definiteness by Sylvester's criterion on leading principal
//!   minors,
//! * exact linear solve over the rationals with a three-way outcome,
//! * membership of a vector in the integer span of given vectors, via a
//!   Hermite-style row echelon form.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by the underlying type.
pub type Rat = num_rational::BigRational;

/// Convenience constructor used heavily in tests and builders.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Integer as a rational.
pub fn rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix not symmetric: entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
}

/// Dense matrix of `Int` entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(ExactError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: c,
                });
            }
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builder for literal matrices in tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("literal rows must be rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((self.rows, self.cols));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Upper-left `k`×`k` block.
    pub fn leading_principal_submatrix(&self, k: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.at(i, j).clone());
            }
        }
        m
    }

    /// Submatrix picking the given row/column indices (used for Gram
    /// matrices restricted to a support set).
    pub fn principal_submatrix(&self, idx: &[usize]) -> IntMatrix {
        let k = idx.len();
        let mut m = IntMatrix::zero(k, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.at(i, j).clone());
            }
        }
        m
    }

    /// Matrix–vector product over `Int`.
    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination. All intermediate
    /// divisions are exact, so the whole computation stays in `Int`.
    pub fn det(&self) -> Result<Int, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a: Vec<Vec<Int>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Exact by the Sylvester determinant identity backing
                    // Bareiss elimination.
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Sylvester's criterion: the form is negative definite iff the k-th
    /// leading principal minor has sign (−1)^k for every k ≥ 1 (strictly —
    /// a zero minor disqualifies).
    pub fn is_negative_definite(&self) -> Result<bool, ExactError> {
        if let Some((i, j)) = self.symmetry_defect() {
            if !self.is_square() {
                return Err(ExactError::NonSquare {
                    rows: self.rows,
                    cols: self.cols,
                });
            }
            return Err(ExactError::NotSymmetric { i, j });
        }
        for k in 1..=self.rows {
            let minor = self.leading_principal_submatrix(k).det()?;
            let want_negative = k % 2 == 1;
            let ok = if want_negative {
                minor.is_negative()
            } else {
                minor.is_positive()
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact solve of `self · x = b` over the rationals for square `self`.
    // Elimination mutates one row while reading the pivot row, so indexed
    // loops are the clearest way to express the two-row access.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Rat]) -> Result<LinearSolution, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch {
                left: self.rows,
                right: b.len(),
            });
        }
        let n = self.rows;
        // Augmented matrix over Rat, reduced to row echelon form.
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(rat)
                    .chain(std::iter::once(b[i].clone()))
                    .collect()
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].clone();
            for v in aug[r][c..].iter_mut() {
                *v = &*v / &inv;
            }
            for i in 0..n {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=n {
                        let t = &aug[r][j] * &f;
                        aug[i][j] = &aug[i][j] - &t;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        // Inconsistent when a zero row has nonzero right-hand side.
        for row in aug.iter().skip(r) {
            if !row[n].is_zero() {
                return Ok(LinearSolution::NoSolution);
            }
        }
        if r < n {
            return Ok(LinearSolution::NonUnique);
        }
        let mut x = vec![Rat::zero(); n];
        for (k, &c) in pivot_cols.iter().enumerate() {
            x[c] = aug[k][n].clone();
        }
        Ok(LinearSolution::Unique(x))
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rat>),
    NoSolution,
    NonUnique,
}

impl LinearSolution {
    pub fn unique(self) -> Option<Vec<Rat>> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Row echelon form over ℤ (Hermite-style: pivots positive, entries below
/// each pivot zero; no reduction above pivots since only the row span
/// matters here). Returns the nonzero rows.
// Elimination mutates one row while reading the pivot row, so indexed
// loops are the clearest way to express the two-row access.
#[allow(clippy::needless_range_loop)]
pub fn integer_row_echelon(vectors: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Int>> = vectors.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
    let mut r = 0;
    for c in 0..dim {
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            let Some(&best) = nonzero
                .iter()
                .min_by_key(|&&i| rows[i][c].abs())
            else {
                break;
            };
            rows.swap(r, best);
            if nonzero.len() == 1 {
                break;
            }
            // Reduce every other entry in this column modulo the smallest
            // one; repeating this is the Euclidean algorithm on the column.
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = &rows[i][c] / &rows[r][c];
                    if !q.is_zero() {
                        for j in 0..dim {
                            let t = &rows[r][j] * &q;
                            rows[i][j] = &rows[i][j] - &t;
                        }
                    } else {
                        // |entry| < |pivot| is impossible (pivot is minimal),
                        // so q == 0 only if entry == 0 already.
                        unreachable!("pivot was chosen minimal in column");
                    }
                }
            }
            if (r + 1..rows.len()).all(|i| rows[i][c].is_zero()) {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for v in rows[r].iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
            r += 1;
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Does `target` lie in the ℤ-span of `vectors`?
///
/// Reduces `target` against the integer row echelon form of `vectors`;
/// membership holds iff the reduction terminates at the zero vector with
/// every quotient integral.
pub fn in_integer_span(vectors: &[Vec<Int>], target: &[Int]) -> Result<bool, ExactError> {
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != target.len() {
            return Err(ExactError::RaggedRow {
                row: i,
                len: v.len(),
                expected: target.len(),
            });
        }
    }
    let echelon = integer_row_echelon(vectors);
    let mut t = target.to_vec();
    for row in &echelon {
        let c = row
            .iter()
            .position(|v| !v.is_zero())
            .expect("echelon rows are nonzero");
        if !t[c].is_zero() {
            let q = &t[c] / &row[c];
            let rem = &t[c] - &q * &row[c];
            if !rem.is_zero() {
                return Ok(false);
            }
            for j in 0..t.len() {
                let s = &row[j] * &q;
                t[j] = &t[j] - &s;
            }
        }
    }
    Ok(is_zero_vec(&t))
}

/// Dot product of two equal-length integer vectors.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
