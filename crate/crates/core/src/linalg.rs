//! Exact dense integer matrices.
//!
//! Determinants and adjugates use Bareiss fraction-free elimination, so every
//! intermediate value is an integer minor of the input and no rational
//! arithmetic is needed. Smith normal form is computed by the classical
//! pivot-and-reduce loop and only the invariant factors are kept.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num::{BigInt, Integer, One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors of anything convertible to `BigInt`.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<T: Clone + Into<BigInt>>(columns: &[Vec<T>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone().into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Self::from_fn(self.rows, columns.len(), |i, j| self[(i, columns[j])].clone())
    }

    /// `result[(a, b)] = self[(rows[a], cols[b])]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |a, b| self[(rows[a], cols[b])].clone())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &self[(i, j)]).sum())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        match bareiss_forward(&mut m, n) {
            Some(sign) => sign * &m[n - 1][n - 1],
            None => BigInt::zero(),
        }
    }

    /// Returns `(det, adj)` with `self * adj == det * I`.
    ///
    /// The adjugate of a singular matrix is not needed anywhere in this crate,
    /// so `None` is returned when the determinant vanishes.
    pub fn adjugate(&self) -> Option<(BigInt, IntMatrix)> {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some((BigInt::one(), IntMatrix::zeros(0, 0)));
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        let sign = bareiss_forward(&mut m, n)?;
        // m[n-1][n-1] is sign * det. Back substitution of U x = last * y gives
        // x = last * A^{-1} with every division exact.
        let last = m[n - 1][n - 1].clone();
        let mut x = IntMatrix::zeros(n, n);
        for c in 0..n {
            for i in (0..n).rev() {
                let mut acc = &last * &m[i][n + c];
                for k in i + 1..n {
                    acc -= &m[i][k] * &x[(k, c)];
                }
                let (q, r) = acc.div_rem(&m[i][i]);
                debug_assert!(r.is_zero(), "inexact division in Bareiss back substitution");
                x[(i, c)] = q;
            }
        }
        let det = &sign * &last;
        if sign.is_negative() {
            for e in x.data.iter_mut() {
                *e = -&*e;
            }
        }
        Some((det, x))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..self.rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let (a, b) = (m[rank][col].clone(), m[i][col].clone());
                for j in col..self.cols {
                    let v = &m[i][j] * &a - &m[rank][j] * &b;
                    m[i][j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Nonzero invariant factors of the Smith normal form, in divisibility order.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.to_rows();
        let mut factors = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                let pivot = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
                let Some((pi, pj)) = pivot else {
                    return factors;
                };
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }

                let mut clean = true;
                for i in t + 1..rows {
                    let q = &a[i][t] / &a[t][t];
                    if !q.is_zero() {
                        for j in t..cols {
                            let v = &q * &a[t][j];
                            a[i][j] -= v;
                        }
                    }
                    clean &= a[i][t].is_zero();
                }
                for j in t + 1..cols {
                    let q = &a[t][j] / &a[t][t];
                    if !q.is_zero() {
                        for i in t..rows {
                            let v = &q * &a[i][t];
                            a[i][j] -= v;
                        }
                    }
                    clean &= a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }

                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match offender {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            factors.push(a[t][t].abs());
        }
        factors
    }
}

/// Bareiss elimination on the leading `n` columns of `m` (rows may be longer,
/// e.g. an augmented identity). Returns the sign of the row permutation, or
/// `None` if the leading block is singular.
fn bareiss_forward(m: &mut [Vec<BigInt>], n: usize) -> Option<BigInt> {
    let width = m[0].len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let p = (k + 1..n).find(|&i| !m[i][k].is_zero())?;
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Some(sign)
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}
