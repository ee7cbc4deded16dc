//! Endomorphism algebras of Artinian modules, idempotent search, and module
//! comparison. Endomorphisms are realized as k-matrices on the cokernel
//! basis that commute with the multiplication action of every variable; the
//! search for nontrivial idempotents decides desk-scale indecomposability.

use crate::fp_module::{flat_basis, flat_coords, FPModule, ModuleError, Window};
use crate::groebner::Ideal;
use crate::linalg::{KMatrix, RowSpan};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, RingCtx};
use crate::ring::QuotientRing;
use crate::scalar::{FieldKind, Scalar};
use std::sync::Arc;

/// The cokernel of a presentation as a concrete k-vector space: the span of
/// the image inside the flat free module and the complementary coordinate
/// positions forming a basis of the quotient.
pub struct CokerSpace {
    ring: Arc<QuotientRing>,
    rank: usize,
    image_span: RowSpan,
    basis_positions: Vec<usize>,
}

impl CokerSpace {
    pub fn new(module: &FPModule) -> Result<CokerSpace, ModuleError> {
        let ring = module.ring().clone();
        if !ring.is_artinian() {
            return Err(ModuleError::NotArtinian);
        }
        let rank = module.free_rank();
        let ell = ring.length().unwrap();
        let total = rank * ell;
        let field = ring.ctx().field();
        let mut image_span = RowSpan::new(field, total);
        let basis = ring.monomial_basis().unwrap().to_vec();
        for j in 0..module.matrix().cols() {
            let col = module.matrix().column(j);
            for u in &basis {
                let scaled: Vec<Polynomial> =
                    col.iter().map(|p| p.mul_term(u, &Scalar::one(field))).collect();
                image_span.insert(&flat_coords(&ring, rank, &scaled));
            }
        }
        let pivots: Vec<usize> = image_span.pivots().to_vec();
        let basis_positions: Vec<usize> =
            (0..total).filter(|pos| !pivots.contains(pos)).collect();
        Ok(CokerSpace { ring, rank, image_span, basis_positions })
    }

    pub fn dim(&self) -> usize {
        self.basis_positions.len()
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// Class of a vector of the free cover in the cokernel coordinates.
    pub fn class_coords(&self, vec: &[Polynomial]) -> Vec<Scalar> {
        let flat = flat_coords(&self.ring, self.rank, vec);
        let reduced = self.image_span.reduce(&flat);
        self.basis_positions.iter().map(|&p| reduced[p].clone()).collect()
    }

    /// Representative in the free cover of the i-th cokernel basis vector.
    pub fn basis_rep(&self, i: usize) -> Vec<Polynomial> {
        let fb = flat_basis(&self.ring, self.rank);
        let (comp, mono) = &fb[self.basis_positions[i]];
        let mut vec = vec![Polynomial::zero(self.ring.ctx()); self.rank];
        vec[*comp] =
            Polynomial::term(self.ring.ctx(), mono.clone(), Scalar::one(self.ring.ctx().field()));
        vec
    }

    /// Matrix of multiplication by a ring element on the cokernel basis.
    pub fn mult_matrix(&self, elem: &Polynomial) -> KMatrix {
        let field = self.ring.ctx().field();
        let n = self.dim();
        let mut out = KMatrix::zero(field, n, n);
        for j in 0..n {
            let rep = self.basis_rep(j);
            let scaled: Vec<Polynomial> = rep.iter().map(|p| p.mul(elem)).collect();
            for (i, c) in self.class_coords(&scaled).into_iter().enumerate() {
                if !c.is_zero() {
                    out.set(i, j, c);
                }
            }
        }
        out
    }
}

/// End_R(M) as a finite-dimensional algebra: a basis of commuting matrices,
/// the multiplication table over that basis, and the identity coordinates.
pub struct EndAlgebra {
    pub field: FieldKind,
    pub module_dim: usize,
    pub basis: Vec<KMatrix>,
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub id_coords: Vec<Scalar>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coords: &[Scalar]) -> KMatrix {
        let mut out = KMatrix::zero(self.field, self.module_dim, self.module_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

/// R-linear endomorphisms = k-matrices commuting with the action of every
/// variable (the variables generate R over k).
pub fn endomorphism_algebra(module: &FPModule) -> Result<EndAlgebra, ModuleError> {
    let coker = CokerSpace::new(module)?;
    let field = coker.ring().ctx().field();
    let n = coker.dim();
    if n == 0 {
        return Ok(EndAlgebra {
            field,
            module_dim: 0,
            basis: Vec::new(),
            table: Vec::new(),
            id_coords: Vec::new(),
        });
    }
    let actions: Vec<KMatrix> = (0..coker.ring().ctx().nvars())
        .map(|v| coker.mult_matrix(&Polynomial::var(coker.ring().ctx(), v)))
        .collect();
    let basis = intertwiner_basis(field, n, n, &actions, &actions);

    // multiplication table and identity coordinates over the chosen basis
    let dim = basis.len();
    let mut stack = KMatrix::zero(field, n * n, dim);
    for (j, b) in basis.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                stack.set(r * n + c, j, b.get(r, c).clone());
            }
        }
    }
    let coords_of = |m: &KMatrix| -> Vec<Scalar> {
        let mut flat = vec![Scalar::zero(field); n * n];
        for r in 0..n {
            for c in 0..n {
                flat[r * n + c] = m.get(r, c).clone();
            }
        }
        stack.solve(&flat).expect("endomorphism algebra is closed")
    };
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            row.push(coords_of(&basis[i].matmul(&basis[j])));
        }
        table.push(row);
    }
    let id_coords = coords_of(&KMatrix::identity(field, n));
    Ok(EndAlgebra { field, module_dim: n, basis, table, id_coords })
}

/// Basis of {E : E·ρ_M(v) = ρ_N(v)·E for all variables v}, the space of
/// R-linear maps M → N on cokernel coordinates.
fn intertwiner_basis(
    field: FieldKind,
    dim_m: usize,
    dim_n: usize,
    actions_m: &[KMatrix],
    actions_n: &[KMatrix],
) -> Vec<KMatrix> {
    // unknowns E_{ab}: a < dim_n rows, b < dim_m cols
    let unknowns = dim_n * dim_m;
    let rows = actions_m.len() * dim_n * dim_m;
    let mut sys = KMatrix::zero(field, rows, unknowns);
    let mut row = 0;
    for (rm, rn) in actions_m.iter().zip(actions_n) {
        for c in 0..dim_n {
            for d in 0..dim_m {
                // (E·rm − rn·E)_{cd} = Σ_k E_{ck} rm_{kd} − rn_{ck} E_{kd}
                for k in 0..dim_m {
                    let v = sys.get(row, c * dim_m + k).add(rm.get(k, d));
                    sys.set(row, c * dim_m + k, v);
                }
                for k in 0..dim_n {
                    let v = sys.get(row, k * dim_m + d).sub(rn.get(c, k));
                    sys.set(row, k * dim_m + d, v);
                }
                row += 1;
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|flat| {
            let mut m = KMatrix::zero(field, dim_n, dim_m);
            for a in 0..dim_n {
                for b in 0..dim_m {
                    m.set(a, b, flat[a * dim_m + b].clone());
                }
            }
            m
        })
        .collect()
}

#[derive(Debug, Clone)]
pub enum IndecomposabilityVerdict {
    Indecomposable,
    /// A verified nontrivial idempotent endomorphism.
    Decomposable { witness: KMatrix },
    Unknown { reason: String },
}

/// Exhaustive idempotent search in End(M) within the enumeration budget.
/// Over finite fields every element of the algebra is tested; over the
/// rationals a Gröbner certificate that the idempotent variety is {0, id}
/// is attempted. The zero module counts as decomposable (empty sum).
pub fn is_indecomposable_bruteforce(
    module: &FPModule,
    budget: u64,
) -> Result<IndecomposabilityVerdict, ModuleError> {
    let end = endomorphism_algebra(module)?;
    if end.module_dim == 0 {
        return Ok(IndecomposabilityVerdict::Decomposable {
            witness: KMatrix::zero(end.field, 0, 0),
        });
    }
    if end.dim() == 1 {
        return Ok(IndecomposabilityVerdict::Indecomposable);
    }
    if let FieldKind::Prime(p) = end.field {
        let count = (p as f64).powi(end.dim() as i32);
        if count <= budget as f64 {
            return Ok(enumerate_idempotents(&end, p));
        }
    }
    if end.dim() <= 8 {
        if let Some(true) = idempotent_variety_is_trivial(&end) {
            return Ok(IndecomposabilityVerdict::Indecomposable);
        }
    }
    Ok(IndecomposabilityVerdict::Unknown {
        reason: format!("End(M) has dimension {}, beyond the configured budget", end.dim()),
    })
}

fn enumerate_idempotents(end: &EndAlgebra, p: u32) -> IndecomposabilityVerdict {
    let dim = end.dim();
    let n = end.module_dim;
    let field = end.field;
    let pm = p as u64;
    let to_flat = |m: &KMatrix| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Scalar::Prime { value, .. } = m.get(i, j) {
                    out[i * n + j] = *value as u64;
                }
            }
        }
        out
    };
    let basis: Vec<Vec<u64>> = end.basis.iter().map(|b| to_flat(b)).collect();
    let zero = vec![0u64; n * n];
    let mut id = vec![0u64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    // with p^dim within budget the products n·(p−1)² fit a u64 comfortably
    let mut digits = vec![0u32; dim];
    let mut current = zero.clone();
    loop {
        // advance the odometer; adding the basis matrix once per bump is
        // correct through rollovers because p·B = 0 over F_p
        let mut pos = 0;
        loop {
            if pos == dim {
                return IndecomposabilityVerdict::Indecomposable;
            }
            for (c, b) in current.iter_mut().zip(&basis[pos]) {
                *c = (*c + b) % pm;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if current == zero || current == id {
            continue;
        }
        let mut idempotent = true;
        'square: for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += current[i * n + k] * current[k * n + j];
                }
                if acc % pm != current[i * n + j] {
                    idempotent = false;
                    break 'square;
                }
            }
        }
        if idempotent {
            let mut witness = KMatrix::zero(field, n, n);
            for i in 0..n {
                for j in 0..n {
                    witness.set(i, j, Scalar::from_integer(field, current[i * n + j] as i64));
                }
            }
            debug_assert_eq!(witness.matmul(&witness), witness);
            return IndecomposabilityVerdict::Decomposable { witness };
        }
    }
}

/// Gröbner certificate: the idempotent equations cut out exactly {0, id}
/// over the algebraic closure, via radical membership of the vanishing
/// ideal of the two points. Some(true) certifies indecomposability.
fn idempotent_variety_is_trivial(end: &EndAlgebra) -> Option<bool> {
    let dim = end.dim();
    let field = end.field;
    let names: Vec<String> = (0..dim).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ctx = RingCtx::new(field, refs.iter().map(|s| s.to_string()).collect(), MonomialOrder::GrevLex);
    let c: Vec<Polynomial> = (0..dim).map(|i| Polynomial::var(&ctx, i)).collect();
    // e^2 − e = 0 coordinatewise over the structure constants
    let mut eqs = Vec::new();
    for k in 0..dim {
        let mut acc = Polynomial::zero(&ctx);
        for i in 0..dim {
            for j in 0..dim {
                let s = &end.table[i][j][k];
                if !s.is_zero() {
                    acc = acc.add(&c[i].mul(&c[j]).scale(s));
                }
            }
        }
        acc = acc.sub(&c[k]);
        eqs.push(acc);
    }
    let j_ideal = Ideal::new(&ctx, eqs);
    // ideal of the two points 0 and id
    let m0 = Ideal::new(&ctx, c.clone());
    let m1 = Ideal::new(
        &ctx,
        c.iter()
            .zip(&end.id_coords)
            .map(|(ci, idc)| ci.sub(&Polynomial::constant(&ctx, idc.clone())))
            .collect(),
    );
    let points_ideal = m0.intersect(&m1);
    for g in points_ideal.groebner_basis() {
        // Rabinowitsch: g ∈ √J iff 1 ∈ J + (1 − t·g)
        let (ext, t_idx) = ctx.with_aux_var();
        let t = Polynomial::var(&ext, t_idx);
        let mut gens: Vec<Polynomial> = j_ideal.generators().iter().map(|p| p.map_to(&ext)).collect();
        gens.push(Polynomial::one(&ext).sub(&t.mul(&g.map_to(&ext))));
        if !Ideal::new(&ext, gens).is_unit_ideal() {
            return None;
        }
    }
    Some(true)
}

#[derive(Debug, Clone)]
pub enum Comparison {
    NotIsomorphic { invariant: String },
    Isomorphic { witness: IsoWitness },
    Unknown { reason: String },
}

/// Mutually inverse R-linear maps on the cokernel bases.
#[derive(Debug, Clone)]
pub struct IsoWitness {
    pub forward: KMatrix,
    pub inverse: KMatrix,
}

/// Compares two modules over the same ring: distinguishing invariants first
/// (length or Hilbert values, minimal generator count, every Fitting ideal),
/// then an exhaustive search for an invertible homomorphism when the ring is
/// Artinian and the space is within budget.
pub fn compare_modules(
    a: &FPModule,
    b: &FPModule,
    window: Window,
    budget: u64,
) -> Result<Comparison, ModuleError> {
    assert!(**a.ring() == **b.ring(), "modules over different rings");
    let ring = a.ring().clone();
    match window {
        Window::Exact => {
            if a.length()? != b.length()? {
                return Ok(Comparison::NotIsomorphic { invariant: "length".to_string() });
            }
        }
        Window::Truncated(d) => {
            if a.hilbert_values(d)? != b.hilbert_values(d)? {
                return Ok(Comparison::NotIsomorphic { invariant: "Hilbert function".to_string() });
            }
        }
    }
    if a.nu()? != b.nu()? {
        return Ok(Comparison::NotIsomorphic { invariant: "minimal generator count".to_string() });
    }
    let top = a.free_rank().max(b.free_rank());
    for j in 0..=top {
        if !a.fitting_ideal(j).equal(&b.fitting_ideal(j)) {
            return Ok(Comparison::NotIsomorphic { invariant: format!("Fitt_{j}") });
        }
    }
    if !ring.is_artinian() {
        return Ok(Comparison::Unknown {
            reason: "all invariants agree; witness search requires the Artinian engine".to_string(),
        });
    }
    if a.matrix() == b.matrix() {
        let n = CokerSpace::new(a)?.dim();
        let id = KMatrix::identity(ring.ctx().field(), n);
        return Ok(Comparison::Isomorphic {
            witness: IsoWitness { forward: id.clone(), inverse: id },
        });
    }
    let ca = CokerSpace::new(a)?;
    let cb = CokerSpace::new(b)?;
    let field = ring.ctx().field();
    let nvars = ring.ctx().nvars();
    let actions_a: Vec<KMatrix> =
        (0..nvars).map(|v| ca.mult_matrix(&Polynomial::var(ring.ctx(), v))).collect();
    let actions_b: Vec<KMatrix> =
        (0..nvars).map(|v| cb.mult_matrix(&Polynomial::var(ring.ctx(), v))).collect();
    let hom = intertwiner_basis(field, ca.dim(), cb.dim(), &actions_a, &actions_b);
    let FieldKind::Prime(p) = field else {
        return Ok(Comparison::Unknown {
            reason: "witness enumeration implemented for finite fields".to_string(),
        });
    };
    let count = (p as f64).powi(hom.len() as i32);
    if count > budget as f64 {
        return Ok(Comparison::Unknown {
            reason: format!("homomorphism space dimension {} exceeds the budget", hom.len()),
        });
    }
    let n = ca.dim();
    let mut digits = vec![0u32; hom.len()];
    let mut current = KMatrix::zero(field, n, n);
    loop {
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(Comparison::NotIsomorphic {
                    invariant: "no invertible homomorphism (exhaustive search)".to_string(),
                });
            }
            current = current.add(&hom[pos]);
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if let Some(inv) = current.inverse() {
            return Ok(Comparison::Isomorphic {
                witness: IsoWitness { forward: current, inverse: inv },
            });
        }
    }
}
