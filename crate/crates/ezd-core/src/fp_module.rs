//! Finitely presented modules M = coker(A : R^q → R^p) and the two engines
//! behind every homological question about them: exact finite-dimensional
//! linear algebra when R is Artinian, and degreewise truncated linear algebra
//! up to a window degree when R is graded of positive dimension.

use crate::hilbert::{trailing_constant_difference, HilbertError};
use crate::linalg::KMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;
use crate::rmatrix::{MatrixError, RMatrix, Twists};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("operation requires an Artinian ring")]
    NotArtinian,
    #[error("composition of the two maps is nonzero in the ring")]
    CompositionNonzero,
    #[error("window degree {got} is too small; need at least {required}")]
    WindowTooSmall { required: u32, got: u32 },
    #[error("module dimension is below the ring dimension")]
    DimensionBelowRing,
    #[error("module multiplicity fit did not stabilize up to degree {reached}")]
    FitFailed { reached: u32 },
    #[error("resolution window exhausted at degree {reached}")]
    WindowExhausted { reached: u32 },
}

/// Computation window: exact for Artinian rings, truncated at a top degree
/// for the graded engine. A truncation must clear the matrix entry degrees
/// by at least two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    Exact,
    Truncated(u32),
}

impl Window {
    pub fn for_ring(ring: &QuotientRing, d: u32) -> Window {
        if ring.is_artinian() {
            Window::Exact
        } else {
            Window::Truncated(d)
        }
    }

    pub fn check_entries(&self, matrices: &[&RMatrix]) -> Result<(), ModuleError> {
        if let Window::Truncated(d) = self {
            let max_entry = matrices
                .iter()
                .flat_map(|m| (0..m.rows() * m.cols()).map(move |i| m.get(i / m.cols(), i % m.cols())))
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0);
            if *d < max_entry + 2 {
                return Err(ModuleError::WindowTooSmall { required: max_entry + 2, got: *d });
            }
        }
        Ok(())
    }
}

/// A finitely presented module given by its presentation matrix. The rows of
/// the matrix index the free cover, the columns index relations. In the
/// graded engine the generator degrees are inferred from the entries, each
/// connected component of the presentation anchored at degree zero.
#[derive(Clone, Debug)]
pub struct FPModule {
    matrix: RMatrix,
}

impl FPModule {
    pub fn cokernel(matrix: RMatrix) -> FPModule {
        FPModule { matrix }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn free_rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_minimal_presentation(&self) -> bool {
        self.matrix.is_minimal()
    }

    /// Equivalent module with unit entries stripped away.
    pub fn minimized(&self) -> Result<FPModule, ModuleError> {
        Ok(FPModule { matrix: self.matrix.strip_units()? })
    }

    /// Minimal number of generators, by Nakayama the free rank of the
    /// stripped presentation.
    pub fn nu(&self) -> Result<usize, ModuleError> {
        Ok(self.minimized()?.free_rank())
    }

    /// dim_k of the cokernel; Artinian engine.
    pub fn length(&self) -> Result<usize, ModuleError> {
        let ring = self.ring();
        if !ring.is_artinian() {
            return Err(ModuleError::NotArtinian);
        }
        let ell = ring.length().unwrap();
        let total = self.matrix.rows() * ell;
        let rank = flat_map_matrix(&self.matrix).rank();
        Ok(total - rank)
    }

    /// Hilbert function of the cokernel over degrees min-twist..=D, as
    /// (degree, dimension) pairs; graded engine.
    pub fn hilbert_values(&self, d_top: u32) -> Result<Vec<(i64, usize)>, ModuleError> {
        let tw = self.matrix.infer_twists()?;
        let ring = self.ring();
        let dmin = tw.row_degrees.iter().copied().min().unwrap_or(0);
        let mut out = Vec::new();
        for d in dmin..=(d_top as i64) {
            let total = free_dim_at(ring, &tw.row_degrees, d);
            let rank = map_matrix_at_degree(&self.matrix, &tw, d).rank();
            out.push((d, total - rank));
        }
        Ok(out)
    }

    /// Multiplicity normalized at the ring dimension: the trailing constant
    /// (dim R − 1)-th difference of the Hilbert values. A vanishing constant
    /// means the module's dimension is below the ring's and is reported as a
    /// distinct error. For Artinian rings this is the length.
    pub fn multiplicity(&self, d_start: u32) -> Result<u64, ModuleError> {
        let ring = self.ring().clone();
        if ring.is_artinian() {
            return Ok(self.length()? as u64);
        }
        let dim = ring.dim();
        let mut d_top = d_start.max(dim as u32 + 3);
        let cap = 64;
        loop {
            let values = self.hilbert_values(d_top)?;
            let dims: Vec<i64> = values.iter().map(|&(_, v)| v as i64).collect();
            let window = dim + 3;
            if dims.len() >= window {
                if let Some(c) = trailing_constant_difference(&dims, dim - 1, window) {
                    if c > 0 {
                        return Ok(c as u64);
                    }
                    if c == 0 {
                        return Err(ModuleError::DimensionBelowRing);
                    }
                }
            }
            if d_top >= cap {
                return Err(ModuleError::FitFailed { reached: d_top });
            }
            d_top = (d_top * 2).min(cap);
        }
    }

    /// Fitting ideal Fitt_j: the (rank − j)-minors of the presentation, as a
    /// polynomial ideal containing the defining ideal. Unit ideal when
    /// j ≥ rank; independent of the chosen presentation.
    pub fn fitting_ideal(&self, j: usize) -> crate::groebner::Ideal {
        let p = self.matrix.rows();
        if j >= p {
            return self.ring().push_ideal(&[Polynomial::one(self.ring().ctx())]);
        }
        self.matrix.minors_ideal(p - j)
    }
}

// ---------------------------------------------------------------------------
// graded engine: degreewise bases and matrices
// ---------------------------------------------------------------------------

/// k-basis of the degree-d piece of ⊕_i R(−twists[i]): pairs (component,
/// standard monomial), component-major, monomials descending.
pub fn degree_basis(
    ring: &Arc<QuotientRing>,
    twists: &[i64],
    d: i64,
) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (i, &t) in twists.iter().enumerate() {
        let local = d - t;
        if local < 0 {
            continue;
        }
        for m in ring.graded_piece(local as u32).iter() {
            out.push((i, m.clone()));
        }
    }
    out
}

pub fn free_dim_at(ring: &Arc<QuotientRing>, twists: &[i64], d: i64) -> usize {
    twists
        .iter()
        .map(|&t| {
            let local = d - t;
            if local < 0 {
                0
            } else {
                ring.graded_piece(local as u32).len()
            }
        })
        .sum()
}

/// Coordinates of a homogeneous vector of degree d in ⊕R(−twists[i]).
pub fn vector_coords(
    ring: &Arc<QuotientRing>,
    twists: &[i64],
    d: i64,
    vec: &[Polynomial],
    basis_index: &HashMap<(usize, Monomial), usize>,
    len: usize,
) -> Vec<Scalar> {
    let field = ring.ctx().field();
    let mut out = vec![Scalar::zero(field); len];
    for (i, p) in vec.iter().enumerate() {
        let nf = ring.normal_form(p);
        for (m, c) in nf.terms() {
            debug_assert_eq!(m.degree() as i64 + twists[i], d, "vector is not homogeneous of degree {d}");
            let pos = basis_index[&(i, m.clone())];
            out[pos] = c.clone();
        }
    }
    out
}

pub fn basis_index(basis: &[(usize, Monomial)]) -> HashMap<(usize, Monomial), usize> {
    basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect()
}

/// The degree-d slice of the map defined by the matrix: columns indexed by
/// the domain basis, rows by the codomain basis.
pub fn map_matrix_at_degree(m: &RMatrix, tw: &Twists, d: i64) -> KMatrix {
    let ring = m.ring();
    let field = ring.ctx().field();
    let dom = degree_basis(ring, &tw.col_degrees, d);
    let cod = degree_basis(ring, &tw.row_degrees, d);
    let cod_index = basis_index(&cod);
    let mut out = KMatrix::zero(field, cod.len(), dom.len());
    for (col, (j, u)) in dom.iter().enumerate() {
        for i in 0..m.rows() {
            let e = m.get(i, *j);
            if e.is_zero() {
                continue;
            }
            let prod = ring.normal_form(&e.mul_term(u, &Scalar::one(field)));
            for (mon, c) in prod.terms() {
                let pos = cod_index[&(i, mon.clone())];
                out.set(pos, col, c.clone());
            }
        }
    }
    out
}

/// Kernel of the degree-d slice, lifted back to polynomial vectors in the
/// domain free module. The vectors come in the canonical rref order.
pub fn kernel_at_degree(m: &RMatrix, tw: &Twists, d: i64) -> Vec<Vec<Polynomial>> {
    let ring = m.ring();
    let dom = degree_basis(ring, &tw.col_degrees, d);
    if dom.is_empty() {
        return Vec::new();
    }
    let slice = map_matrix_at_degree(m, tw, d);
    slice
        .kernel_basis()
        .into_iter()
        .map(|kv| {
            let mut vec = vec![Polynomial::zero(ring.ctx()); m.cols()];
            for (pos, c) in kv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (j, u) = &dom[pos];
                vec[*j] = vec[*j].add(&Polynomial::term(ring.ctx(), u.clone(), c.clone()));
            }
            vec
        })
        .collect()
}

/// Kernel bases per degree up to the window top; graded engine. The window
/// must clear the entry degrees by two.
pub fn graded_kernel(
    m: &RMatrix,
    d_top: u32,
) -> Result<Vec<(i64, Vec<Vec<Polynomial>>)>, ModuleError> {
    Window::Truncated(d_top).check_entries(&[m])?;
    let tw = m.infer_twists()?;
    let dmin = tw.col_degrees.iter().copied().min().unwrap_or(0);
    let mut out = Vec::new();
    for d in dmin..=(d_top as i64) {
        out.push((d, kernel_at_degree(m, &tw, d)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// exact engine: the whole finite-dimensional module at once
// ---------------------------------------------------------------------------

/// Component-major flat basis of R^rank over the monomial basis of an
/// Artinian ring.
pub fn flat_basis(ring: &Arc<QuotientRing>, rank: usize) -> Vec<(usize, Monomial)> {
    let basis = ring.monomial_basis().expect("flat basis needs an Artinian ring");
    let mut out = Vec::with_capacity(rank * basis.len());
    for i in 0..rank {
        for m in basis {
            out.push((i, m.clone()));
        }
    }
    out
}

pub fn flat_coords(ring: &Arc<QuotientRing>, rank: usize, vec: &[Polynomial]) -> Vec<Scalar> {
    let basis = ring.monomial_basis().expect("flat coords need an Artinian ring");
    let field = ring.ctx().field();
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let ell = basis.len();
    let mut out = vec![Scalar::zero(field); rank * ell];
    for (i, p) in vec.iter().enumerate() {
        let nf = ring.normal_form(p);
        for (m, c) in nf.terms() {
            out[i * ell + index[m]] = c.clone();
        }
    }
    out
}

/// The k-matrix of the map R^q → R^p on flat bases; exact engine.
pub fn flat_map_matrix(m: &RMatrix) -> KMatrix {
    let ring = m.ring();
    let field = ring.ctx().field();
    let basis = ring.monomial_basis().expect("exact engine needs an Artinian ring");
    let ell = basis.len();
    let mut out = KMatrix::zero(field, m.rows() * ell, m.cols() * ell);
    for j in 0..m.cols() {
        for (b, u) in basis.iter().enumerate() {
            let col = j * ell + b;
            let image: Vec<Polynomial> = (0..m.rows())
                .map(|i| m.get(i, j).mul_term(u, &Scalar::one(field)))
                .collect();
            let coords = flat_coords(ring, m.rows(), &image);
            for (row, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.set(row, col, c);
                }
            }
        }
    }
    out
}

/// Full kernel of the map as polynomial vectors; exact engine.
pub fn exact_kernel(m: &RMatrix) -> Result<Vec<Vec<Polynomial>>, ModuleError> {
    let ring = m.ring();
    if !ring.is_artinian() {
        return Err(ModuleError::NotArtinian);
    }
    let basis = ring.monomial_basis().unwrap().to_vec();
    let ell = basis.len();
    let slice = flat_map_matrix(m);
    Ok(slice
        .kernel_basis()
        .into_iter()
        .map(|kv| {
            let mut vec = vec![Polynomial::zero(ring.ctx()); m.cols()];
            for (pos, c) in kv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (j, b) = (pos / ell, pos % ell);
                vec[j] = vec[j].add(&Polynomial::term(ring.ctx(), basis[b].clone(), c.clone()));
            }
            vec
        })
        .collect())
}

// ---------------------------------------------------------------------------
// exactness of a pair of maps
// ---------------------------------------------------------------------------

/// Checks im(d2) = ker(d1) for a composable pair. The composition must be
/// zero symbolically in the ring first; a nonzero composition is an error
/// distinct from mere inexactness (which returns Ok(false)).
pub fn verify_exact_pair(d1: &RMatrix, d2: &RMatrix, window: Window) -> Result<bool, ModuleError> {
    assert_eq!(d1.cols(), d2.rows(), "maps are not composable");
    if !d1.matmul(d2).is_zero() {
        return Err(ModuleError::CompositionNonzero);
    }
    match window {
        Window::Exact => {
            let ring = d1.ring();
            if !ring.is_artinian() {
                return Err(ModuleError::NotArtinian);
            }
            let ell = ring.length().unwrap();
            let nullity = d1.cols() * ell - flat_map_matrix(d1).rank();
            let rank2 = flat_map_matrix(d2).rank();
            Ok(nullity == rank2)
        }
        Window::Truncated(d_top) => {
            window.check_entries(&[d1, d2])?;
            let tw1 = d1.infer_twists()?;
            let tw2 = d2.infer_twists_pinned(&tw1.col_degrees)?;
            let ring = d1.ring();
            let dmin = tw1.col_degrees.iter().copied().min().unwrap_or(0);
            for d in dmin..=(d_top as i64) {
                let dom_dim = free_dim_at(ring, &tw1.col_degrees, d);
                let rank1 = map_matrix_at_degree(d1, &tw1, d).rank();
                let rank2 = map_matrix_at_degree(d2, &tw2, d).rank();
                if dom_dim - rank1 != rank2 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
