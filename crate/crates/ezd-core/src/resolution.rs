//! Minimal free resolutions by degreewise syzygy solving, with periodicity
//! detection. When a candidate companion matrix is supplied and verifies
//! (both compositions zero, both exactness directions, minimal entries), the
//! resolution is the alternating complex built from the pair; otherwise
//! differentials are chosen canonically from the kernel, smallest pivot
//! first, and periodicity is detected by entrywise comparison.

use crate::fp_module::{
    degree_basis, exact_kernel, flat_coords, kernel_at_degree, vector_coords, verify_exact_pair,
    FPModule, ModuleError, Window,
};
use crate::linalg::RowSpan;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;
use crate::rmatrix::{RMatrix, Twists};
use crate::scalar::Scalar;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodMethod {
    Entrywise,
    CompanionVerified,
    NotDetected,
}

#[derive(Clone, Debug)]
pub struct ResolutionSegment {
    pub differentials: Vec<RMatrix>,
    /// per-step flag: every entry lies in the maximal ideal
    pub minimal: Vec<bool>,
    /// smallest p in {1, 2} with d_{i+p} equal to d_i entrywise on the
    /// computed segment
    pub period: Option<usize>,
    pub period_at_most_two: bool,
    pub method: PeriodMethod,
    pub window: Window,
    /// true when the segment ended because a kernel vanished (finite
    /// resolution); only the exact engine can certify this
    pub terminated: bool,
}

impl ResolutionSegment {
    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }
}

/// Computes `steps` differentials of a minimal free resolution of the module
/// within the window. The presentation is unit-stripped and its redundant
/// columns dropped first, so every differential has entries in the maximal
/// ideal.
pub fn minimal_free_resolution(
    module: &FPModule,
    steps: usize,
    window: Window,
    companion: Option<&RMatrix>,
) -> Result<ResolutionSegment, ModuleError> {
    assert!(steps >= 1);
    let ring = module.ring().clone();
    if matches!(window, Window::Exact) && !ring.is_artinian() {
        return Err(ModuleError::NotArtinian);
    }
    let stripped = module.matrix().strip_units()?;
    let mut check = vec![&stripped];
    if let Some(c) = companion {
        check.push(c);
    }
    window.check_entries(&check)?;
    let d1 = minimalize_columns(&stripped, window)?;

    if d1.cols() == 0 {
        // free module: nothing to resolve
        return Ok(ResolutionSegment {
            minimal: vec![d1.is_minimal()],
            differentials: vec![d1],
            period: None,
            period_at_most_two: true,
            method: PeriodMethod::NotDetected,
            window,
            terminated: true,
        });
    }

    // a verified companion pair yields the alternating resolution directly
    if let Some(cand) = companion {
        if companion_fits(&d1, cand, window)? && companion_fits(cand, &d1, window)? {
            let mut differentials = Vec::with_capacity(steps);
            for i in 0..steps {
                differentials.push(if i % 2 == 0 { d1.clone() } else { cand.clone() });
            }
            let period = if cand == &d1 { Some(1) } else { Some(2) };
            let minimal = differentials.iter().map(|m| m.is_minimal()).collect();
            return Ok(ResolutionSegment {
                differentials,
                minimal,
                period,
                period_at_most_two: true,
                method: PeriodMethod::CompanionVerified,
                window,
                terminated: false,
            });
        }
    }

    // canonical syzygy construction
    let mut differentials = vec![d1];
    let mut twists: Vec<Twists> = Vec::new();
    if let Window::Truncated(_) = window {
        twists.push(differentials[0].infer_twists()?);
    }
    let mut terminated = false;
    while differentials.len() < steps {
        let prev = differentials.last().unwrap();
        if prev.cols() == 0 {
            terminated = true;
            break;
        }
        let (next, next_tw) = match window {
            Window::Exact => (canonical_syzygy_exact(&ring, prev)?, None),
            Window::Truncated(d_top) => {
                let tw = twists.last().unwrap();
                let (m, tw2) = canonical_syzygy_graded(&ring, prev, tw, d_top)?;
                (m, Some(tw2))
            }
        };
        if let Some(tw2) = next_tw {
            twists.push(tw2);
        }
        differentials.push(next);
    }
    if let Some(last) = differentials.last() {
        if last.cols() == 0 {
            terminated = true;
        }
    }

    let minimal: Vec<bool> = differentials.iter().map(|m| m.is_minimal()).collect();
    let period = detect_period(&differentials);
    let at_most_two = matches!(period, Some(1) | Some(2)) || terminated;
    let method = if period.is_some() { PeriodMethod::Entrywise } else { PeriodMethod::NotDetected };
    Ok(ResolutionSegment {
        differentials,
        minimal,
        period,
        period_at_most_two: at_most_two,
        method,
        window,
        terminated,
    })
}

fn detect_period(diffs: &[RMatrix]) -> Option<usize> {
    'outer: for p in 1..=2usize {
        if diffs.len() < p + 1 {
            continue;
        }
        for i in 0..(diffs.len() - p) {
            if diffs[i] != diffs[i + p] {
                continue 'outer;
            }
        }
        return Some(p);
    }
    None
}

/// A companion candidate fits as the next differential when the composition
/// vanishes, the image equals the kernel within the window, and its entries
/// stay in the maximal ideal.
fn companion_fits(prev: &RMatrix, cand: &RMatrix, window: Window) -> Result<bool, ModuleError> {
    if prev.cols() != cand.rows() || !cand.is_minimal() {
        return Ok(false);
    }
    match verify_exact_pair(prev, cand, window) {
        Ok(ok) => Ok(ok),
        Err(ModuleError::CompositionNonzero) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Drops columns that lie in the submodule generated by the others, so the
/// relations minimally generate the image. The cokernel is unchanged.
fn minimalize_columns(m: &RMatrix, window: Window) -> Result<RMatrix, ModuleError> {
    if m.cols() == 0 {
        return Ok(m.clone());
    }
    let ring = m.ring().clone();
    let columns: Vec<Vec<Polynomial>> = (0..m.cols()).map(|j| m.column(j)).collect();
    let keep: Vec<usize> = match window {
        Window::Exact => select_minimal_flat(&ring, m.rows(), &columns),
        Window::Truncated(_) => {
            let tw = m.infer_twists()?;
            let degs: Vec<i64> = tw.col_degrees.clone();
            select_minimal_graded(&ring, &tw.row_degrees, &columns, &degs)
        }
    };
    let mut entries = Vec::with_capacity(m.rows() * keep.len());
    for r in 0..m.rows() {
        for &j in &keep {
            entries.push(m.get(r, j).clone());
        }
    }
    Ok(RMatrix::new(&ring, m.rows(), keep.len(), entries)?)
}

/// Indices of a minimal generating subset of the given vectors (flat engine):
/// survivors of the span of m·W, taken in order.
fn select_minimal_flat(
    ring: &Arc<QuotientRing>,
    rank: usize,
    vectors: &[Vec<Polynomial>],
) -> Vec<usize> {
    let ell = ring.length().expect("flat selection needs an Artinian ring");
    let field = ring.ctx().field();
    let mut span = RowSpan::new(field, rank * ell);
    for v in vectors {
        for var in 0..ring.ctx().nvars() {
            let xv = Polynomial::var(ring.ctx(), var);
            let scaled: Vec<Polynomial> = v.iter().map(|p| p.mul(&xv)).collect();
            span.insert(&flat_coords(ring, rank, &scaled));
        }
    }
    let mut keep = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        if span.insert(&flat_coords(ring, rank, v)) {
            keep.push(j);
        }
    }
    keep
}

/// Graded version: process degrees ascending; at each degree the span of
/// m·W is assembled from all vectors of strictly smaller degree.
fn select_minimal_graded(
    ring: &Arc<QuotientRing>,
    row_twists: &[i64],
    vectors: &[Vec<Polynomial>],
    degrees: &[i64],
) -> Vec<usize> {
    let field = ring.ctx().field();
    let mut keep = Vec::new();
    let mut degs: Vec<i64> = degrees.to_vec();
    degs.sort_unstable();
    degs.dedup();
    for &d in &degs {
        let basis = degree_basis(ring, row_twists, d);
        let index = crate::fp_module::basis_index(&basis);
        let mut span = RowSpan::new(field, basis.len());
        for (v, &dv) in vectors.iter().zip(degrees) {
            if dv >= d {
                continue;
            }
            let gap = (d - dv) as u32;
            for u in ring.graded_piece(gap).iter() {
                let scaled: Vec<Polynomial> =
                    v.iter().map(|p| p.mul_term(u, &Scalar::one(field))).collect();
                span.insert(&vector_coords(ring, row_twists, d, &scaled, &index, basis.len()));
            }
        }
        for (j, (v, &dv)) in vectors.iter().zip(degrees).enumerate() {
            if dv != d {
                continue;
            }
            if span.insert(&vector_coords(ring, row_twists, d, v, &index, basis.len())) {
                keep.push(j);
            }
        }
    }
    keep.sort_unstable();
    keep
}

/// Next differential from the full kernel, minimal generators chosen in the
/// canonical rref order; exact engine.
fn canonical_syzygy_exact(ring: &Arc<QuotientRing>, prev: &RMatrix) -> Result<RMatrix, ModuleError> {
    let kernel = exact_kernel(prev)?;
    let rank = prev.cols();
    if kernel.is_empty() {
        return Ok(RMatrix::zero(ring, rank, 0));
    }
    let keep = {
        let ell = ring.length().unwrap();
        let field = ring.ctx().field();
        let mut span = RowSpan::new(field, rank * ell);
        for v in &kernel {
            for var in 0..ring.ctx().nvars() {
                let xv = Polynomial::var(ring.ctx(), var);
                let scaled: Vec<Polynomial> = v.iter().map(|p| p.mul(&xv)).collect();
                span.insert(&flat_coords(ring, rank, &scaled));
            }
        }
        let mut keep = Vec::new();
        for (j, v) in kernel.iter().enumerate() {
            if span.insert(&flat_coords(ring, rank, v)) {
                keep.push(j);
            }
        }
        keep
    };
    let cols = keep.len();
    let mut entries = Vec::with_capacity(rank * cols);
    for r in 0..rank {
        for &j in &keep {
            entries.push(kernel[j][r].clone());
        }
    }
    Ok(RMatrix::new(ring, rank, cols, entries)?)
}

/// Next differential from degreewise kernels, new generators being the
/// kernel vectors that escape the span of multiples of earlier choices;
/// graded engine. Errors with the window degree when nothing is found.
fn canonical_syzygy_graded(
    ring: &Arc<QuotientRing>,
    prev: &RMatrix,
    tw: &Twists,
    d_top: u32,
) -> Result<(RMatrix, Twists), ModuleError> {
    let field = ring.ctx().field();
    let rank = prev.cols();
    let row_twists = tw.col_degrees.clone();
    let dmin = row_twists.iter().copied().min().unwrap_or(0);
    let mut chosen: Vec<(Vec<Polynomial>, i64)> = Vec::new();
    for d in dmin..=(d_top as i64) {
        let kernel = kernel_at_degree(prev, tw, d);
        if kernel.is_empty() {
            continue;
        }
        let basis = degree_basis(ring, &row_twists, d);
        let index = crate::fp_module::basis_index(&basis);
        let mut span = RowSpan::new(field, basis.len());
        for (s, ds) in &chosen {
            let gap = d - ds;
            if gap < 0 {
                continue;
            }
            for u in ring.graded_piece(gap as u32).iter() {
                let scaled: Vec<Polynomial> =
                    s.iter().map(|p| p.mul_term(u, &Scalar::one(field))).collect();
                span.insert(&vector_coords(ring, &row_twists, d, &scaled, &index, basis.len()));
            }
        }
        for v in kernel {
            if span.insert(&vector_coords(ring, &row_twists, d, &v, &index, basis.len())) {
                chosen.push((v, d));
            }
        }
    }
    if chosen.is_empty() {
        return Err(ModuleError::WindowExhausted { reached: d_top });
    }
    let cols = chosen.len();
    let mut entries = Vec::with_capacity(rank * cols);
    for r in 0..rank {
        for (v, _) in &chosen {
            entries.push(v[r].clone());
        }
    }
    let matrix = RMatrix::new(ring, rank, cols, entries)?;
    let col_degrees: Vec<i64> = chosen.iter().map(|(_, d)| *d).collect();
    Ok((matrix, Twists { row_degrees: row_twists, col_degrees }))
}
