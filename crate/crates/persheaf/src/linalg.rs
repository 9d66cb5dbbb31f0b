//! Dense exact linear algebra over a [`Scalar`] type.
//!
//! Everything here is deterministic: pivot choice is always the first
//! admissible row/column, so repeated runs on equal input produce identical
//! output, including basis ordering.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Malformed(format!(
                "matrix data length {} does not match shape {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have equal length; `cols`
    /// disambiguates the zero-row case.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        for r in rows {
            if r.len() != cols {
                return Err(Error::Malformed(format!(
                    "ragged input: row of length {} in a width-{} matrix",
                    r.len(),
                    cols
                )));
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Malformed(format!(
                "shape mismatch in product: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c).clone() + a.clone() * other.at(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal juxtaposition: `self` top-left, `other` bottom-right.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Matrix::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.at(r, c).clone());
            }
        }
        m
    }

    pub fn scaled(&self, s: &T) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.clone() * s.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Malformed("shape mismatch in sum".into()));
        }
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(other.data.iter()) {
            *v = v.clone() + w.clone();
        }
        Ok(out)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// True for the square identity; every 0x0 matrix is an identity.
    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.at(r, c);
                if r == c {
                    if !v.is_one() {
                        return false;
                    }
                } else if !v.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Malformed("vector length does not match matrix width".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, vc) in v.iter().enumerate() {
                    acc = acc + self.at(r, c).clone() * vc.clone();
                }
                acc
            })
            .collect())
    }

    /// Rank by fraction-free (Bareiss) elimination on a working copy.
    /// Divisions are by the previous pivot and are exact over an exact field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = T::one();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(src * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let pivot = m.at(pivot_row, col).clone();
            for r in pivot_row + 1..m.rows {
                let lead = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = (pivot.clone() * m.at(r, c).clone()
                        - lead.clone() * m.at(pivot_row, c).clone())
                        / prev.clone();
                    m.set(r, c, v);
                }
            }
            prev = pivot;
            pivot_row += 1;
        }
        pivot_row
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data.swap(src * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = T::one() / self.at(pivot_row, col).clone();
            for c in col..self.cols {
                let v = self.at(pivot_row, c).clone() * inv.clone();
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.at(r, col).is_zero() {
                    continue;
                }
                let f = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).clone() - f.clone() * self.at(pivot_row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    /// Basis of the right null space `{x : Ax = 0}`, one vector per free
    /// column, in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero() - m.at(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * X = rhs` exactly. Returns the particular solution with
    /// all free variables zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        assert_eq!(self.rows, rhs.rows, "solve: row counts must agree");
        let mut aug = Matrix::zero(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            for c in 0..rhs.cols {
                aug.set(r, self.cols + c, rhs.at(r, c).clone());
            }
        }
        let pivots = aug.rref();
        // A pivot in the rhs block witnesses an inconsistent row 0 = 1.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.at(i, self.cols + c).clone());
            }
        }
        Some(x)
    }
}

/// Rank of the row span. Empty input has rank 0.
impl<T: Scalar> fmt::Display for Matrix<T> {
    /// Row-list rendering, e.g. `[[1, 0], [0, 1]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> Result<usize> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    Ok(Matrix::from_rows(rows, width)?.rank())
}

/// Basis of `{x in k^ambient_dim : r . x = 0 for every row r}`.
pub fn kernel_basis<T: Scalar>(rows: &[Vec<T>], ambient_dim: usize) -> Result<Vec<Vec<T>>> {
    Ok(Matrix::from_rows(rows, ambient_dim)?.kernel_basis())
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}
