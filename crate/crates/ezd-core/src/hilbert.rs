//! Krull dimension, exact Hilbert functions of graded quotients, multiplicity
//! extraction, and minimal generator counts ν (including ν of an ideal's
//! image in a quotient ring, which is what the module certificates consume).

use crate::groebner::Ideal;
use crate::linalg::RowSpan;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Polynomial, RingCtx};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("generator `{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("the unit ideal has no Hilbert data (zero ring)")]
    UnitIdeal,
    #[error("multiplicity fit did not stabilize up to degree {reached}")]
    FitFailed { reached: u32 },
}

/// Hilbert function values of the quotient, its Krull dimension, and the
/// multiplicity extracted from the trailing difference protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub values: Vec<(u32, usize)>,
    pub krull_dim: usize,
    pub multiplicity: u64,
}

/// Krull dimension of ctx/ideal as the largest variable subset independent
/// modulo the leading term ideal. None for the unit ideal (the zero ring).
pub fn krull_dim(ideal: &Ideal) -> Option<usize> {
    if ideal.is_unit_ideal() {
        return None;
    }
    let n = ideal.ctx().nvars();
    assert!(n <= 22, "exhaustive independent-set search needs a small variable count");
    let supports: Vec<u32> =
        ideal.groebner_basis().iter().map(|g| g.leading_monomial().unwrap().support()).collect();
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Standard monomials of degree d: those not divisible by any leading
/// monomial of the ideal's reduced basis.
pub fn standard_monomials(ideal: &Ideal, d: u32) -> Vec<Monomial> {
    let lms: Vec<&Monomial> =
        ideal.groebner_basis().iter().map(|g| g.leading_monomial().unwrap()).collect();
    monomials_of_degree(ideal.ctx().nvars(), d, ideal.ctx().order())
        .into_iter()
        .filter(|m| !lms.iter().any(|lm| lm.divides(m)))
        .collect()
}

fn require_homogeneous(ideal: &Ideal) -> Result<(), HilbertError> {
    for g in ideal.generators() {
        if !g.is_homogeneous() {
            return Err(HilbertError::NonHomogeneous(g.to_string()));
        }
    }
    Ok(())
}

/// Exact Hilbert data of the quotient by a homogeneous ideal. Values are
/// computed out to at least `up_to`; the degree is raised (doubling, capped)
/// until the multiplicity extraction validates on a trailing window.
pub fn hilbert_data(ideal: &Ideal, up_to: u32) -> Result<HilbertData, HilbertError> {
    hilbert_data_capped(ideal, up_to, 64)
}

pub fn hilbert_data_capped(ideal: &Ideal, up_to: u32, cap: u32) -> Result<HilbertData, HilbertError> {
    require_homogeneous(ideal)?;
    let dim = krull_dim(ideal).ok_or(HilbertError::UnitIdeal)?;
    let mut d_max = up_to.max(dim as u32 + 3);
    loop {
        let values: Vec<(u32, usize)> =
            (0..=d_max).map(|d| (d, standard_monomials(ideal, d).len())).collect();
        let dims: Vec<i64> = values.iter().map(|&(_, v)| v as i64).collect();
        if dim == 0 {
            if dims.last() == Some(&0) {
                let multiplicity = dims.iter().sum::<i64>() as u64;
                return Ok(HilbertData { values, krull_dim: 0, multiplicity });
            }
        } else {
            // the (dim-1)-th differences of the trailing dim+3 values must be
            // a positive constant: degree-(dim-1) polynomial through the last
            // dim+1 values, validated on the two preceding ones
            let window = dim + 3;
            if dims.len() >= window {
                if let Some(c) = trailing_constant_difference(&dims, dim - 1, window) {
                    if c > 0 {
                        return Ok(HilbertData {
                            values,
                            krull_dim: dim,
                            multiplicity: c as u64,
                        });
                    }
                }
            }
        }
        if d_max >= cap {
            return Err(HilbertError::FitFailed { reached: d_max });
        }
        d_max = (d_max * 2).min(cap);
    }
}

/// The `level`-th finite differences of the last `window` values, when they
/// are all equal; None otherwise.
pub fn trailing_constant_difference(values: &[i64], level: usize, window: usize) -> Option<i64> {
    if values.len() < window || window < level + 2 {
        return None;
    }
    let mut cur: Vec<i64> = values[values.len() - window..].to_vec();
    for _ in 0..level {
        cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
    }
    if cur.windows(2).all(|w| w[0] == w[1]) {
        Some(cur[0])
    } else {
        None
    }
}

/// Independent counting oracle for monomial ideals: inclusion–exclusion over
/// the minimal monomial generators. Used to cross-check the direct count.
pub fn standard_monomial_count_incl_excl(nvars: usize, lms: &[Monomial], d: u32) -> i64 {
    assert!(lms.len() <= 20, "inclusion-exclusion oracle is exponential in the generator count");
    fn binom(n: i64, k: i64) -> i64 {
        if n < 0 || k < 0 || k > n {
            return 0;
        }
        let mut acc: i128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as i128 / (i + 1) as i128;
        }
        acc as i64
    }
    let m = nvars as i64;
    let mut total: i64 = 0;
    let one = Monomial::one(nvars);
    let mut stack: Vec<(usize, Monomial, i64)> = vec![(0, one, 1)];
    while let Some((idx, lcm, sign)) = stack.pop() {
        if idx == lms.len() {
            let deg = lcm.degree() as i64;
            total += sign * binom(d as i64 - deg + m - 1, m - 1);
            continue;
        }
        stack.push((idx + 1, lcm.clone(), sign));
        stack.push((idx + 1, lcm.lcm(&lms[idx]), -sign));
    }
    total
}

/// Dimension over k of the degree-d piece of a homogeneous ideal. The span
/// of monomial multiples of any homogeneous generating set already fills the
/// whole graded piece, so no basis computation is needed.
pub fn ideal_degree_dim(ideal: &Ideal, d: u32) -> usize {
    let ctx = ideal.ctx();
    let basis = monomials_of_degree(ctx.nvars(), d, ctx.order());
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut span = RowSpan::new(ctx.field(), basis.len());
    for g in ideal.generators() {
        assert!(g.is_homogeneous(), "degree pieces need homogeneous generators");
        let Some(gd) = g.degree() else { continue };
        if gd > d {
            continue;
        }
        for u in monomials_of_degree(ctx.nvars(), d - gd, ctx.order()) {
            if span.rank() == basis.len() {
                return span.rank();
            }
            let prod = g.mul_term(&u, &crate::scalar::Scalar::one(ctx.field()));
            let mut row = vec![crate::scalar::Scalar::zero(ctx.field()); basis.len()];
            for (m, c) in prod.terms() {
                row[index[m]] = c.clone();
            }
            span.insert(&row);
        }
    }
    span.rank()
}

/// ν of a homogeneous ideal: the minimal number of generators, computed
/// degree by degree as dim J_d − dim (m·J)_d, together with a chosen minimal
/// generating list drawn from the reduced basis.
pub fn minimal_generators(ideal: &Ideal) -> Result<(usize, Vec<Polynomial>), HilbertError> {
    require_homogeneous(ideal)?;
    let ctx = ideal.ctx();
    let gb = ideal.groebner_basis();
    if gb.is_empty() {
        return Ok((0, Vec::new()));
    }
    let mut degrees: Vec<u32> = gb.iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut count = 0usize;
    for &d in &degrees {
        let basis = monomials_of_degree(ctx.nvars(), d, ctx.order());
        let index: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_row = |p: &Polynomial| {
            let mut row = vec![crate::scalar::Scalar::zero(ctx.field()); basis.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        };
        // span of (m·J)_d: nonconstant multiples of basis elements
        let mut span = RowSpan::new(ctx.field(), basis.len());
        for g in gb {
            let gd = g.degree().unwrap();
            if gd >= d {
                continue;
            }
            for u in monomials_of_degree(ctx.nvars(), d - gd, ctx.order()) {
                span.insert(&to_row(&g.mul_term(&u, &crate::scalar::Scalar::one(ctx.field()))));
            }
        }
        // survivors among degree-d basis elements are minimal generators
        for g in gb {
            if g.degree().unwrap() == d && span.insert(&to_row(g)) {
                chosen.push(g.clone());
                count += 1;
            }
        }
    }
    Ok((count, chosen))
}

/// ν over the quotient by `modulus` of the ideal generated by the images of
/// `j_gens`: dim of (J+K)/(mJ+K) summed over the generator degrees.
pub fn nu_modulo(
    ctx: &Arc<RingCtx>,
    j_gens: &[Polynomial],
    modulus: &Ideal,
) -> Result<usize, HilbertError> {
    for g in j_gens {
        if !g.is_homogeneous() {
            return Err(HilbertError::NonHomogeneous(g.to_string()));
        }
    }
    require_homogeneous(modulus)?;
    let nonzero: Vec<&Polynomial> = j_gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(0);
    }
    let mut degrees: Vec<u32> = nonzero.iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let jk = modulus.plus(&nonzero.iter().map(|g| (*g).clone()).collect::<Vec<_>>());
    let mut mj_gens = Vec::new();
    for g in &nonzero {
        for v in 0..ctx.nvars() {
            mj_gens.push(Polynomial::var(ctx, v).mul(g));
        }
    }
    let mjk = modulus.plus(&mj_gens);

    let mut total = 0usize;
    for &d in &degrees {
        let a = ideal_degree_dim(&jk, d);
        let b = ideal_degree_dim(&mjk, d);
        debug_assert!(a >= b);
        total += a - b;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;
    use crate::scalar::FieldKind;

    fn p(ctx: &Arc<RingCtx>, s: &str) -> Polynomial {
        parse_polynomial(s, ctx).unwrap()
    }

    #[test]
    fn krull_dim_examples() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["v", "w", "z"]);
        let i = Ideal::new(&c, vec![p(&c, "w*z")]);
        assert_eq!(krull_dim(&i), Some(2));

        let c3 = RingCtx::grevlex(FieldKind::Rational, &["x", "y", "z"]);
        let art = Ideal::new(&c3, vec![p(&c3, "x^2"), p(&c3, "y^2"), p(&c3, "y*z"), p(&c3, "z^2")]);
        assert_eq!(krull_dim(&art), Some(0));

        let c2 = RingCtx::grevlex(FieldKind::Rational, &["x", "y"]);
        assert_eq!(krull_dim(&Ideal::zero(&c2)), Some(2));
        let unit = Ideal::new(&c2, vec![Polynomial::one(&c2)]);
        assert_eq!(krull_dim(&unit), None);
    }

    #[test]
    fn hilbert_artinian_example() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["y", "z"]);
        let i = Ideal::new(&c, vec![p(&c, "y^2"), p(&c, "y*z"), p(&c, "z^2")]);
        let h = hilbert_data(&i, 5).unwrap();
        assert_eq!(h.krull_dim, 0);
        assert_eq!(h.multiplicity, 3);
        assert_eq!(&h.values[..4], &[(0, 1), (1, 2), (2, 0), (3, 0)]);
    }

    #[test]
    fn hilbert_polynomial_ring() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["x"]);
        let h = hilbert_data(&Ideal::zero(&c), 5).unwrap();
        assert_eq!(h.krull_dim, 1);
        assert_eq!(h.multiplicity, 1);
        assert!(h.values.iter().all(|&(_, v)| v == 1));
    }

    #[test]
    fn hilbert_determinantal_ring() {
        let c = RingCtx::grevlex(FieldKind::prime(2), &["v", "w", "x", "y", "z"]);
        let i = Ideal::new(
            &c,
            vec![p(&c, "v*y - w*x"), p(&c, "v*z - x^2"), p(&c, "w*z - x*y")],
        );
        let h = hilbert_data(&i, 8).unwrap();
        assert_eq!(h.krull_dim, 3);
        assert_eq!(h.multiplicity, 3);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["x", "y"]);
        let i = Ideal::new(&c, vec![p(&c, "x^2 - y")]);
        assert!(matches!(hilbert_data(&i, 5), Err(HilbertError::NonHomogeneous(_))));
    }

    #[test]
    fn incl_excl_matches_direct_count() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["x", "y", "z"]);
        let i = Ideal::new(&c, vec![p(&c, "x^2"), p(&c, "y^2"), p(&c, "y*z"), p(&c, "z^2")]);
        let lms: Vec<Monomial> =
            i.groebner_basis().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        for d in 0..6 {
            let direct = standard_monomials(&i, d).len() as i64;
            let ie = standard_monomial_count_incl_excl(3, &lms, d);
            assert_eq!(direct, ie, "degree {d}");
        }
    }

    #[test]
    fn minimal_generator_counts() {
        let c = RingCtx::grevlex(FieldKind::Rational, &["x", "y"]);
        let i = Ideal::new(&c, vec![p(&c, "x^2"), p(&c, "x*y"), p(&c, "y^2")]);
        assert_eq!(minimal_generators(&i).unwrap().0, 3);

        let j = Ideal::new(&c, vec![p(&c, "x"), p(&c, "x^2"), p(&c, "x^3")]);
        assert_eq!(minimal_generators(&j).unwrap().0, 1);

        assert_eq!(minimal_generators(&Ideal::zero(&c)).unwrap().0, 0);
    }

    #[test]
    fn nu_modulo_quotient() {
        // over k[y,z]/(y^2,yz,z^2): nu(y, z) = 2, nu(y, z, y+z) = 2
        let c = RingCtx::grevlex(FieldKind::prime(2), &["y", "z"]);
        let k = Ideal::new(&c, vec![p(&c, "y^2"), p(&c, "y*z"), p(&c, "z^2")]);
        let nu = nu_modulo(&c, &[p(&c, "y"), p(&c, "z")], &k).unwrap();
        assert_eq!(nu, 2);
        let nu3 = nu_modulo(&c, &[p(&c, "y"), p(&c, "z"), p(&c, "y + z")], &k).unwrap();
        assert_eq!(nu3, 2);
        let nu0 = nu_modulo(&c, &[], &k).unwrap();
        assert_eq!(nu0, 0);
    }
}
