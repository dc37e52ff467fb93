//! Dense matrices over the exact rings.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::par;
use crate::report::Mismatch;
use crate::ring::{Frac, Laurent, RingElem, Variables};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: RingElem> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn diagonal(d: Vec<R>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: Vec<Vec<R>>) -> Self {
        let cols = columns.len();
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        let mut m = Self::zeros(rows, cols);
        for (c, column) in columns.into_iter().enumerate() {
            for (r, x) in column.into_iter().enumerate() {
                m.data[r * cols + c] = x;
            }
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: R) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn map<T: RingElem, F: Fn(&R) -> T>(&self, f: F) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix product; rows are computed in parallel.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let rows = par::map_indexed(self.rows, |r| {
            let mut out = vec![R::zero(); other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, slot) in out.iter_mut().enumerate() {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *slot = std::mem::replace(slot, R::zero()) + &(a.clone() * b);
                    }
                }
            }
            out
        });
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| x.clone() * k)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.scalar_value().is_some_and(|x| x.is_one())
    }

    /// `Some(c)` when the matrix equals `c · I`.
    pub fn scalar_value(&self) -> Option<R> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(R::one());
        }
        let c = self.get(0, 0).clone();
        for r in 0..self.rows {
            for col in 0..self.cols {
                let x = self.get(r, col);
                let ok = if r == col { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (a, b) = (self.get(r, c), other.get(r, c));
                if a != b {
                    let diff = a.clone() - b;
                    return Some(Mismatch {
                        row: r,
                        col: c,
                        diff: serde_json::to_value(&diff).expect("ring elements serialize"),
                    });
                }
            }
        }
        None
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division in
    /// the algorithm is exact in any integral domain.
    pub fn determinant(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return R::zero();
                };
                a.swap_rows(k, p);
                sign = !sign;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot.clone() * a.get(i, j) - &(a.get(i, k).clone() * a.get(k, j));
                    let q = num.try_div(&prev).expect("Bareiss division is exact");
                    a.set(i, j, q);
                }
                a.set(i, k, R::zero());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = R::one();
        let mut rank = 0;
        for c in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let pivot = a.get(rank, c).clone();
            for i in rank + 1..a.rows {
                let lead = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let num = pivot.clone() * a.get(i, j) - &(lead.clone() * a.get(rank, j));
                    a.set(i, j, num.try_div(&prev).expect("Bareiss division is exact"));
                }
                a.set(i, c, R::zero());
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan inverse using only invertible pivots. `None` when some
    /// column has no invertible candidate; over a field that means singular.
    pub fn inverse_with_unit_pivots(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| a.get(r, c).is_invertible())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pinv = R::one().try_div(a.get(c, c)).expect("pivot is invertible");
            for j in 0..n {
                let x = a.get(c, j).clone() * &pinv;
                a.set(c, j, x);
                let y = inv.get(c, j).clone() * &pinv;
                inv.set(c, j, y);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let x = a.get(r, j).clone() - &(f.clone() * a.get(c, j));
                    a.set(r, j, x);
                    let y = inv.get(r, j).clone() - &(f.clone() * inv.get(c, j));
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }
}

impl<V: Variables> Matrix<Laurent<V>> {
    /// Exact inverse over the Laurent ring. Falls back to the fraction field
    /// when no unit pivot is available; `None` if the matrix is singular or
    /// its inverse has non-Laurent entries.
    pub fn inverse(&self) -> Option<Self> {
        if let Some(inv) = self.inverse_with_unit_pivots() {
            return Some(inv);
        }
        let over_field: Matrix<Frac<V>> = self.map(|x| Frac::from(x.clone()));
        let inv = over_field.inverse_with_unit_pivots()?;
        let mut data = Vec::with_capacity(inv.data.len());
        for x in &inv.data {
            data.push(x.to_laurent()?);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<R: RingElem> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serializes as a list of rows.
impl<R: RingElem> Serialize for Matrix<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[R]> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(serializer)
    }
}
