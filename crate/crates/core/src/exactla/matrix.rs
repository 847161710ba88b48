//! Dense matrices over GF(p), row-major.

use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction: the reduced matrix, its pivot columns, and the rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[GF({}) {}x{}]", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from integer rows, reducing every entry mod p. All rows must share a length.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_shaped(field, rows.len(), cols, rows)
    }

    /// Like [`Matrix::from_rows`] but with an explicit shape, so empty matrices keep their width.
    pub fn from_rows_shaped(field: Field, nrows: usize, ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!(
                "expected {nrows}x{ncols} entries, got {} rows",
                rows.len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.reduce(x))).collect();
        Ok(Matrix { field, rows: nrows, cols: ncols, data })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.p());
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Column vector from residues.
    pub fn column(field: Field, v: &[u32]) -> Self {
        Self::from_fn(field, v.len(), 1, |r, _| v[r])
    }

    /// Row vector from residues.
    pub fn row_vector(field: Field, v: &[u32]) -> Self {
        Self::from_fn(field, 1, v.len(), |_, c| v[c])
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.p() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Matrix { field: f, rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u32).collect() }
    }

    /// Product with a column vector given as residues.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let s = self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u32, u32) -> u32) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&a| f.neg(a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, s)).collect(), ..self.clone() }
    }

    /// `self + s * other`
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let p = self.field.p() as u64;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + s as u64 * b as u64) % p) as u32;
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry in column order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]) as u64;
            if inv != 1 {
                for j in c..cols {
                    let x = &mut self.data[r * cols + j];
                    *x = ((*x as u64 * inv) % p) as u32;
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + neg * prow[j] as u64) % p) as u32;
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: red, pivots, .. } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &j) in free.iter().enumerate() {
            out.set(k, j, 1);
            for (i, &c) in pivots.iter().enumerate() {
                out.set(k, c, f.neg(red.get(i, j)));
            }
        }
        out
    }

    /// Columns of the result are a basis of the column space (the pivot columns of `self`).
    pub fn image_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        Matrix::from_fn(self.field, self.rows, pivots.len(), |r, c| self.get(r, pivots[c]))
    }

    /// Some `X` with `self * X = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let Rref { matrix: red, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, red.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let red = self.hstack(&Matrix::identity(self.field, n)).rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Stack many matrices vertically; `cols` fixes the width when the list is empty.
    pub fn vstack_all(field: Field, cols: usize, parts: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Matrix { field, rows, cols, data }
    }

    pub fn hstack_all(field: Field, rows: usize, parts: &[Matrix]) -> Matrix {
        parts.iter().fold(Matrix::zeros(field, rows, 0), |acc, m| acc.hstack(m))
    }

    /// Submatrix of shape `nr x nc` with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Matrix::from_fn(self.field, nr, nc, |r, c| self.get(r0 + r, c0 + c))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for r in 0..m.rows {
            for c in 0..m.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = m.get(r, c);
            }
        }
    }

    /// Select columns by index.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        Matrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            f.mul(self.get(r / other.rows, c / other.cols), other.get(r % other.rows, c % other.cols))
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Columns that extend the column space of `self` to the whole ambient space:
    /// standard basis vectors `e_j` for every non-pivot row `j` in the echelon form of `self^T`.
    pub fn complement_indices(&self) -> Vec<usize> {
        let piv = self.transpose().rref().pivots;
        let mut mark = vec![false; self.rows];
        for c in piv {
            mark[c] = true;
        }
        (0..self.rows).filter(|&j| !mark[j]).collect()
    }
}
