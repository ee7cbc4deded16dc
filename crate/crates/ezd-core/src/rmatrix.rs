//! Matrices over a quotient ring: entrywise normal forms, graded twist
//! inference, elementary row/column operations, and minors.

use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::{QuotientRing, RingElement};
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("ragged matrix: expected {expected} entries, got {got}")]
    Ragged { expected: usize, got: usize },
    #[error("matrix entry `{0}` is not homogeneous")]
    NonHomogeneousEntry(String),
    #[error("no consistent graded twists exist for the matrix")]
    NotGradable,
    #[error("entry at ({0}, {1}) is not a unit")]
    NotAUnit(usize, usize),
    #[error("unit entry could not be inverted within the nilpotency cap")]
    InversionFailed,
}

/// Row-major matrix of normal-form ring elements.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    ring: Arc<QuotientRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

/// Generator degrees of the free modules of a homogeneous map
/// ⊕R(−col_degrees[j]) → ⊕R(−row_degrees[i]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twists {
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
}

impl RMatrix {
    pub fn new(
        ring: &Arc<QuotientRing>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<RMatrix, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Ragged { expected: rows * cols, got: entries.len() });
        }
        let entries = entries.into_iter().map(|p| ring.normal_form(&p)).collect();
        Ok(RMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_elements(
        ring: &Arc<QuotientRing>,
        rows: usize,
        cols: usize,
        entries: Vec<RingElement>,
    ) -> Result<RMatrix, MatrixError> {
        RMatrix::new(ring, rows, cols, entries.into_iter().map(|e| e.rep().clone()).collect())
    }

    pub fn zero(ring: &Arc<QuotientRing>, rows: usize, cols: usize) -> RMatrix {
        let entries = vec![Polynomial::zero(ring.ctx()); rows * cols];
        RMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn identity(ring: &Arc<QuotientRing>, n: usize) -> RMatrix {
        let mut m = RMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring.ctx()));
        }
        m
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = self.ring.normal_form(&p);
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Entrywise product followed by normal forms; symbolic in R.
    pub fn matmul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert!(*self.ring == *other.ring, "matrices over different rings");
        let mut out = RMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.ring.ctx());
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Every entry lies in the maximal ideal (zero residue).
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().all(|p| p.constant_coeff().is_zero())
    }

    /// Consistent generator degrees for the map, inferred by propagating
    /// entry degrees through the bipartite row/column graph. Each connected
    /// component is anchored at degree zero.
    pub fn infer_twists(&self) -> Result<Twists, MatrixError> {
        for p in &self.entries {
            if !p.is_homogeneous() {
                return Err(MatrixError::NonHomogeneousEntry(p.to_string()));
            }
        }
        let mut row_deg: Vec<Option<i64>> = vec![None; self.rows];
        let mut col_deg: Vec<Option<i64>> = vec![None; self.cols];
        // nodes: 0..rows are rows, rows..rows+cols are columns
        for start in 0..(self.rows + self.cols) {
            let seeded = if start < self.rows {
                row_deg[start].is_none()
            } else {
                col_deg[start - self.rows].is_none()
            };
            if !seeded {
                continue;
            }
            if start < self.rows {
                row_deg[start] = Some(0);
            } else {
                col_deg[start - self.rows] = Some(0);
            }
            let mut stack = vec![start];
            while let Some(node) = stack.pop() {
                if node < self.rows {
                    let i = node;
                    let di = row_deg[i].unwrap();
                    for j in 0..self.cols {
                        let e = self.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let w = e.degree().unwrap() as i64;
                        match col_deg[j] {
                            None => {
                                col_deg[j] = Some(di + w);
                                stack.push(self.rows + j);
                            }
                            Some(dj) => {
                                if dj != di + w {
                                    return Err(MatrixError::NotGradable);
                                }
                            }
                        }
                    }
                } else {
                    let j = node - self.rows;
                    let dj = col_deg[j].unwrap();
                    for i in 0..self.rows {
                        let e = self.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let w = e.degree().unwrap() as i64;
                        match row_deg[i] {
                            None => {
                                row_deg[i] = Some(dj - w);
                                stack.push(i);
                            }
                            Some(di) => {
                                if di != dj - w {
                                    return Err(MatrixError::NotGradable);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Twists {
            row_degrees: row_deg.into_iter().map(|d| d.unwrap()).collect(),
            col_degrees: col_deg.into_iter().map(|d| d.unwrap()).collect(),
        })
    }

    /// Twist inference with the row degrees pinned from the codomain (used
    /// when composing with a map whose column degrees are already fixed).
    /// Columns untouched by any nonzero entry are anchored at zero.
    pub fn infer_twists_pinned(&self, row_degrees: &[i64]) -> Result<Twists, MatrixError> {
        assert_eq!(row_degrees.len(), self.rows);
        for p in &self.entries {
            if !p.is_homogeneous() {
                return Err(MatrixError::NonHomogeneousEntry(p.to_string()));
            }
        }
        let mut col_deg: Vec<Option<i64>> = vec![None; self.cols];
        for j in 0..self.cols {
            for i in 0..self.rows {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let w = row_degrees[i] + e.degree().unwrap() as i64;
                match col_deg[j] {
                    None => col_deg[j] = Some(w),
                    Some(d) if d == w => {}
                    Some(_) => return Err(MatrixError::NotGradable),
                }
            }
        }
        Ok(Twists {
            row_degrees: row_degrees.to_vec(),
            col_degrees: col_deg.into_iter().map(|d| d.unwrap_or(0)).collect(),
        })
    }

    pub fn apply(&mut self, op: &ElementaryOp) {
        match op {
            ElementaryOp::SwapRows(a, b) => {
                for c in 0..self.cols {
                    self.entries.swap(a * self.cols + c, b * self.cols + c);
                }
            }
            ElementaryOp::SwapCols(a, b) => {
                for r in 0..self.rows {
                    self.entries.swap(r * self.cols + a, r * self.cols + b);
                }
            }
            ElementaryOp::ScaleRow(r, u) => {
                for c in 0..self.cols {
                    let v = self.get(*r, c).mul(u);
                    self.set(*r, c, v);
                }
            }
            ElementaryOp::ScaleCol(c, u) => {
                for r in 0..self.rows {
                    let v = self.get(r, *c).mul(u);
                    self.set(r, *c, v);
                }
            }
            ElementaryOp::AddRowMultiple { src, dst, factor } => {
                for c in 0..self.cols {
                    let v = self.get(*dst, c).add(&factor.mul(self.get(*src, c)));
                    self.set(*dst, c, v);
                }
            }
            ElementaryOp::AddColMultiple { src, dst, factor } => {
                for r in 0..self.rows {
                    let v = self.get(r, *dst).add(&factor.mul(self.get(r, *src)));
                    self.set(r, *dst, v);
                }
            }
        }
    }

    fn delete_row_col(&self, row: usize, col: usize) -> RMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            for c in 0..self.cols {
                if c == col {
                    continue;
                }
                entries.push(self.get(r, c).clone());
            }
        }
        RMatrix { ring: self.ring.clone(), rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    /// Repeated elementary reduction at unit entries (nonzero residue):
    /// each pivot splits off a trivial summand, shrinking the presentation.
    /// Returns the stripped matrix; the cokernel is unchanged up to
    /// isomorphism.
    pub fn strip_units(&self) -> Result<RMatrix, MatrixError> {
        let mut m = self.clone();
        'outer: loop {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    if !m.get(i, j).constant_coeff().is_zero() {
                        let inv = invert_unit(&m.ring, m.get(i, j))?;
                        m.apply(&ElementaryOp::ScaleCol(j, inv));
                        debug_assert!(m.get(i, j) == &Polynomial::one(m.ring.ctx()));
                        for c in 0..m.cols {
                            if c != j && !m.get(i, c).is_zero() {
                                let f = m.get(i, c).neg();
                                m.apply(&ElementaryOp::AddColMultiple { src: j, dst: c, factor: f });
                            }
                        }
                        for r in 0..m.rows {
                            if r != i && !m.get(r, j).is_zero() {
                                let f = m.get(r, j).neg();
                                m.apply(&ElementaryOp::AddRowMultiple { src: i, dst: r, factor: f });
                            }
                        }
                        m = m.delete_row_col(i, j);
                        continue 'outer;
                    }
                }
            }
            return Ok(m);
        }
    }

    /// Ideal generated by all k×k minors, pushed forward to the ring (the
    /// returned polynomial ideal contains the defining ideal).
    pub fn minors_ideal(&self, k: usize) -> Ideal {
        if k == 0 {
            return self.ring.push_ideal(&[Polynomial::one(self.ring.ctx())]);
        }
        if k > self.rows || k > self.cols {
            return self.ring.push_ideal(&[]);
        }
        let mut minors = Vec::new();
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                minors.push(self.det_of(rs, cs));
            }
        }
        self.ring.push_ideal(&minors)
    }

    fn det_of(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        // Laplace expansion along the first selected row
        let ctx = self.ring.ctx();
        if rows.is_empty() {
            return Polynomial::one(ctx);
        }
        let mut acc = Polynomial::zero(ctx);
        let r = rows[0];
        for (idx, &c) in cols.iter().enumerate() {
            let e = self.get(r, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> =
                cols.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, &v)| v).collect();
            let minor = self.det_of(&rows[1..], &sub_cols);
            let signed = if idx % 2 == 0 { e.mul(&minor) } else { e.mul(&minor).neg() };
            acc = acc.add(&signed);
        }
        self.ring.normal_form(&acc)
    }

    /// Canonical row-major printing: `[[a, b], [c, d]]`.
    pub fn pretty(&self) -> String {
        let mut rows = Vec::new();
        for r in 0..self.rows {
            let entries: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            rows.push(format!("[{}]", entries.join(", ")));
        }
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

/// Inverse of a unit u = c(1 − n) with n nilpotent: c⁻¹·Σ nᵏ. Terminates for
/// Artinian rings; in the graded positive-dimensional case units are nonzero
/// constants and the sum is trivial.
fn invert_unit(ring: &Arc<QuotientRing>, u: &Polynomial) -> Result<Polynomial, MatrixError> {
    let c = u.constant_coeff();
    if c.is_zero() {
        return Err(MatrixError::InversionFailed);
    }
    let c_inv = c.inv();
    let one = Polynomial::one(ring.ctx());
    // n = 1 - u/c
    let n = ring.normal_form(&one.sub(&u.scale(&c_inv)));
    let mut acc = one.clone();
    let mut power = n.clone();
    let mut steps = 0;
    while !power.is_zero() {
        acc = acc.add(&power);
        power = ring.normal_form(&power.mul(&n));
        steps += 1;
        if steps > 64 {
            return Err(MatrixError::InversionFailed);
        }
    }
    let inv = ring.normal_form(&acc.scale(&c_inv));
    debug_assert!(ring.normal_form(&inv.mul(u)) == one);
    Ok(inv)
}

/// An invertible row/column operation over the ring. Scaling requires a unit
/// multiplier; additions allow any ring element factor.
#[derive(Clone, Debug)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    ScaleRow(usize, Polynomial),
    ScaleCol(usize, Polynomial),
    AddRowMultiple { src: usize, dst: usize, factor: Polynomial },
    AddColMultiple { src: usize, dst: usize, factor: Polynomial },
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::SwapRows(a, b) => write!(f, "swap rows {a} and {b}"),
            ElementaryOp::SwapCols(a, b) => write!(f, "swap columns {a} and {b}"),
            ElementaryOp::ScaleRow(r, u) => write!(f, "scale row {r} by {u}"),
            ElementaryOp::ScaleCol(c, u) => write!(f, "scale column {c} by {u}"),
            ElementaryOp::AddRowMultiple { src, dst, factor } => {
                write!(f, "row {dst} += ({factor}) * row {src}")
            }
            ElementaryOp::AddColMultiple { src, dst, factor } => {
                write!(f, "column {dst} += ({factor}) * column {src}")
            }
        }
    }
}

/// Uniform random-ish elementary op constructors used by the invariance
/// property tests live with the tests; here we only expose application.
pub fn scalar_poly(ring: &Arc<QuotientRing>, c: &Scalar) -> Polynomial {
    Polynomial::constant(ring.ctx(), c.clone())
}
