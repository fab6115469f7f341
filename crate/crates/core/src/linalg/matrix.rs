use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::galois::Field;
use crate::{Error, Result};

/// Dense row-major matrix over a base field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of Gaussian elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Reduced row echelon form; zero rows are dropped.
    pub matrix: GenMatrix,
    /// Pivot column of every row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl GenMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        GenMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics when a row has the wrong length or an entry is not a field
    /// element.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<u8>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged generator rows");
            assert!(r.iter().all(|&c| field.contains(c)), "entry outside {field}");
            data.extend_from_slice(r);
        }
        GenMatrix { field, rows: rows.len(), cols, data }
    }

    pub fn try_from_rows(field: Field, cols: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged generator rows"));
        }
        if rows.iter().flatten().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidInput("entry outside the field"));
        }
        Ok(Self::from_rows(field, cols, rows))
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
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.row_iter().map(<[u8]>::to_vec).collect()
    }

    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// `[self; other]`.
    pub fn stack(&self, other: &GenMatrix) -> Result<GenMatrix> {
        self.check_compatible(other)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GenMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// `[self | other]`.
    pub fn concat_cols(&self, other: &GenMatrix) -> Result<GenMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("row counts differ"));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(GenMatrix { field: self.field, rows: self.rows, cols, data })
    }

    pub fn check_compatible(&self, other: &GenMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("column counts differ"));
        }
        Ok(())
    }

    pub fn transpose(&self) -> GenMatrix {
        let mut t = GenMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &GenMatrix) -> Result<GenMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner dimensions differ"));
        }
        let f = self.field;
        let mut out = GenMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * self^T`, the Gram matrix of the rows.
    pub fn gram(&self) -> GenMatrix {
        let f = self.field;
        let mut out = GenMatrix::zeros(f, self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = dot(f, self.row(i), self.row(j));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Message-times-generator encoding.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        assert_eq!(message.len(), self.rows);
        let f = self.field;
        let mut out = vec![0; self.cols];
        for (r, &m) in message.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        out
    }

    /// Gauss-Jordan elimination. Rows are scaled so every pivot is 1.
    pub fn rref(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).unwrap();
            m.scale_row(row, inv);
            for r in 0..m.rows {
                let c = m.get(r, col);
                if r != row && c != 0 {
                    m.add_scaled_row(r, row, f.neg(c));
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.data.truncate(row * m.cols);
        m.rows = row;
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        let f = self.field;
        for c in 0..self.cols {
            let v = f.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    // row[dst] += s * row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: u8) {
        let f = self.field;
        for c in 0..self.cols {
            let v = f.add(self.get(dst, c), f.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &[u8]) -> bool {
        let ech = self.rref();
        reduce_against(&ech, v).iter().all(|&c| c == 0)
    }

    /// Drops the columns in `positions` (0-indexed).
    pub fn delete_columns(&self, positions: &[usize]) -> GenMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !positions.contains(c)).collect();
        let rows = self.row_iter().map(|r| keep.iter().map(|&c| r[c]).collect()).collect();
        GenMatrix::from_rows(self.field, keep.len(), rows)
    }

    /// Applies a coordinate permutation; entry `i` of `perm` is the new
    /// position of column `i`.
    pub fn permute_columns(&self, perm: &[usize]) -> GenMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = GenMatrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for (c, &dst) in perm.iter().enumerate() {
                out.set(r, dst, self.get(r, c));
            }
        }
        out
    }
}

pub(crate) fn dot(f: Field, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Residue of `v` after eliminating the pivot columns of a reduced basis.
pub(crate) fn reduce_against(ech: &Echelon, v: &[u8]) -> Vec<u8> {
    let f = ech.matrix.field;
    let mut w = v.to_vec();
    for (r, &p) in ech.pivots.iter().enumerate() {
        let c = w[p];
        if c == 0 {
            continue;
        }
        let s = f.neg(c);
        for (x, &g) in w.iter_mut().zip(ech.matrix.row(r)) {
            *x = f.add(*x, f.mul(s, g));
        }
    }
    w
}

impl fmt::Debug for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GenMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in self.row_iter() {
            for &c in r {
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
