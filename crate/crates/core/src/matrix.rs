//! Dense matrices over a [`FieldDescriptor`] with exact row reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{fmt_vec, FieldDescriptor, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|i| fmt_vec(self.row(i))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        if let Some(s) = rows.iter().flatten().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(s.field(), field));
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(field: FieldDescriptor, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(field, x)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j].add_mul(a, other.get(k, j));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(self.get(i, j), vj);
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(self.field), |acc, i| &acc + self.get(i, i))
    }

    /// Reduced row echelon form and the pivot columns (first nonzero pivot in each column).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space basis in reduced echelon form: each vector has a leading 1 and the
    /// basis is unique for the subspace.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        canonical_basis(self.field, basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Some solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Row-reduces a list of vectors and drops zero rows, giving the unique echelon basis of their span.
pub fn canonical_basis(field: FieldDescriptor, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return vectors;
    }
    let m = Matrix::from_rows(field, vectors).expect("equal-length vectors");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}
