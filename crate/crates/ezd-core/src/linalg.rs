//! Dense exact linear algebra over the coefficient field: row reduction,
//! kernels, solving, and an incremental row-span for membership tests.

use crate::scalar::{FieldKind, Scalar};

/// A dense matrix over the field, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    pub field: FieldKind,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl KMatrix {
    pub fn zero(field: FieldKind, rows: usize, cols: usize) -> KMatrix {
        KMatrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldKind, n: usize) -> KMatrix {
        let mut m = KMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldKind, rows: Vec<Vec<Scalar>>) -> KMatrix {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        KMatrix { field, rows: r, cols: c, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matmul(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = KMatrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &KMatrix) -> KMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = out.data[i].add(&other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> KMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.mul(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv();
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    self.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : A·x = 0}, in the canonical rref
    /// parametrization (one vector per free column, in column order).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![Scalar::zero(self.field); self.cols];
            x[free] = Scalar::one(self.field);
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = m.get(i, free).neg();
            }
            basis.push(x);
        }
        basis
    }

    /// Solves A·x = b; returns any solution or None.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = KMatrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<KMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = KMatrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one(self.field));
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = KMatrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(dst, j).sub(&factor.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }
}

/// An incremental row space in rref form. Inserting a vector reduces it
/// against the existing rows; a nonzero remainder becomes a new (normalized)
/// row and enlarges the span.
#[derive(Clone, Debug)]
pub struct RowSpan {
    field: FieldKind,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: FieldKind, dim: usize) -> RowSpan {
        RowSpan { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.dim {
                    v[j] = v[j].sub(&f.mul(&row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in &mut r {
            *x = x.mul(&inv);
        }
        // back-substitute to keep earlier rows reduced
        for (row, &q) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(q != p);
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.dim {
                    row[j] = row[j].sub(&f.mul(&r[j]));
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Pivot coordinates of the rref rows, ascending.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
