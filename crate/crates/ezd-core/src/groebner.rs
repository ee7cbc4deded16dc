//! Buchberger's algorithm with reduction certificates, and the ideal
//! operations built on it: normal forms, membership with cofactors, ideal
//! equality, colon ideals, elimination, intersection, and syzygies.
//!
//! The pair loop uses the normal selection strategy (smallest lcm first)
//! with the product and chain criteria; pair ordering is deterministic so
//! the reduced basis is reproducible run to run.

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, RingCtx};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("colon by the zero element is rejected")]
    ColonByZero,
    #[error("operation requires ideals over the same ring context")]
    ContextMismatch,
    #[error("exact division failed: divisor does not divide the element")]
    InexactDivision,
}

/// An ideal of the polynomial ring, with a lazily computed and then frozen
/// reduced Gröbner basis. The basis elements are monic, pairwise reduced and
/// sorted ascending by leading monomial; each carries a cofactor row
/// expressing it over the original generators.
#[derive(Debug)]
pub struct Ideal {
    ctx: Arc<RingCtx>,
    gens: Vec<Polynomial>,
    cache: OnceLock<GbData>,
}

#[derive(Debug, Clone)]
struct GbData {
    gb: Vec<Polynomial>,
    /// trace[j] expresses gb[j] as sum of trace[j][i] * gens[i]
    trace: Vec<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(data) = self.cache.get() {
            let _ = cache.set(data.clone());
        }
        Ideal { ctx: self.ctx.clone(), gens: self.gens.clone(), cache }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.groebner_basis() == other.groebner_basis()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ctx: &Arc<RingCtx>, gens: Vec<Polynomial>) -> Ideal {
        for g in &gens {
            assert_eq!(g.ctx(), ctx, "generator from a different ring context");
        }
        Ideal { ctx: ctx.clone(), gens, cache: OnceLock::new() }
    }

    pub fn zero(ctx: &Arc<RingCtx>) -> Ideal {
        Ideal::new(ctx, Vec::new())
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn data(&self) -> &GbData {
        self.cache.get_or_init(|| {
            let (gb, trace) = buchberger_traced(&self.ctx, &self.gens);
            GbData { gb, trace }
        })
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.data().gb
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].degree() == Some(0)
    }

    /// Unique remainder with no term divisible by a basis leading term.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.ctx(), &self.ctx, "normal form across ring contexts");
        let gb: Vec<&Polynomial> = self.groebner_basis().iter().collect();
        divide_full(f, &gb).1
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Membership with an exact cofactor certificate over the original
    /// generators; None when the element is not in the ideal.
    pub fn member_certificate(&self, f: &Polynomial) -> Option<MembershipCertificate> {
        let data = self.data();
        let gb: Vec<&Polynomial> = data.gb.iter().collect();
        let (q, r) = divide_full(f, &gb);
        if !r.is_zero() {
            return None;
        }
        let mut cof = vec![Polynomial::zero(&self.ctx); self.gens.len()];
        for (j, qj) in q.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            for (i, t) in data.trace[j].iter().enumerate() {
                if !t.is_zero() {
                    cof[i] = cof[i].add(&qj.mul(t));
                }
            }
        }
        let cert = MembershipCertificate { element: f.clone(), cofactors: cof };
        assert!(cert.verify(&self.gens), "membership certificate failed to recombine");
        Some(cert)
    }

    /// Reduced bases agree termwise exactly when the ideals coincide.
    pub fn equal(&self, other: &Ideal) -> bool {
        assert_eq!(self.ctx, other.ctx, "ideal comparison across ring contexts");
        self.groebner_basis() == other.groebner_basis()
    }

    /// (I : f) = {g : g·f ∈ I}, computed as (I ∩ (f)) / f.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal, GroebnerError> {
        if f.is_zero() {
            return Err(GroebnerError::ColonByZero);
        }
        let principal = Ideal::new(&self.ctx, vec![f.clone()]);
        let meet = self.intersect(&principal);
        let mut gens = Vec::new();
        for g in meet.groebner_basis() {
            gens.push(exact_div(g, f)?);
        }
        let out = Ideal::new(&self.ctx, gens);
        // every returned generator g must satisfy g*f ∈ I
        for g in &out.gens {
            assert!(self.contains(&g.mul(f)), "colon postcondition violated");
        }
        Ok(out)
    }

    /// I ∩ J via the single-tag elimination: eliminate t from t·I + (1−t)·J.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ctx, other.ctx);
        let (ext, t_idx) = self.ctx.with_aux_var();
        let ext = ext.with_order(MonomialOrder::Block { eliminate: 1 << t_idx });
        let t = Polynomial::var(&ext, t_idx);
        let one_minus_t = Polynomial::one(&ext).sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.map_to(&ext)));
        }
        for h in &other.gens {
            gens.push(one_minus_t.mul(&h.map_to(&ext)));
        }
        let j = Ideal::new(&ext, gens);
        let keep = !(1u32 << t_idx);
        let out: Vec<Polynomial> = j
            .groebner_basis()
            .iter()
            .filter(|g| poly_support(g) & !keep == 0)
            .map(|g| g.map_to(&self.ctx))
            .collect();
        Ideal::new(&self.ctx, out)
    }

    /// I ∩ k[keep]: generators of the ideal restricted to the kept variables,
    /// returned in the original context.
    pub fn eliminate(&self, keep_mask: u32) -> Ideal {
        let all = if self.ctx.nvars() == 32 { u32::MAX } else { (1u32 << self.ctx.nvars()) - 1 };
        let elim = all & !keep_mask;
        let octx = self.ctx.with_order(MonomialOrder::Block { eliminate: elim });
        let j = Ideal::new(&octx, self.gens.iter().map(|g| g.map_to(&octx)).collect());
        let out: Vec<Polynomial> = j
            .groebner_basis()
            .iter()
            .filter(|g| poly_support(g) & elim == 0)
            .map(|g| g.map_to(&self.ctx))
            .collect();
        Ideal::new(&self.ctx, out)
    }

    /// Image of the ideal under adjoining extra generators.
    pub fn plus(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ctx, gens)
    }
}

fn poly_support(p: &Polynomial) -> u32 {
    p.terms().iter().fold(0, |acc, (m, _)| acc | m.support())
}

/// f = Σ cofactors[i]·gens[i], exactly.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub element: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl MembershipCertificate {
    pub fn verify(&self, gens: &[Polynomial]) -> bool {
        assert_eq!(gens.len(), self.cofactors.len());
        let mut acc = Polynomial::zero(self.element.ctx());
        for (c, g) in self.cofactors.iter().zip(gens) {
            acc = acc.add(&c.mul(g));
        }
        acc == self.element
    }
}

/// Multivariate division: f = Σ quotients[i]·divisors[i] + remainder where no
/// remainder term is divisible by any divisor's leading monomial. The first
/// divisor whose leading monomial divides the current leading term wins, so
/// the output is deterministic in the divisor order.
pub fn divide_full(f: &Polynomial, divisors: &[&Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ctx = f.ctx().clone();
    let mut quotients = vec![Polynomial::zero(&ctx); divisors.len()];
    let mut rest = f.clone();
    let mut remainder_terms: Vec<(Monomial, Scalar)> = Vec::new();
    'outer: while let Some((lm, lc)) = rest.leading_term().cloned_pair() {
        for (i, d) in divisors.iter().enumerate() {
            let Some((dm, dc)) = d.leading_term().cloned_pair() else { continue };
            if let Some(q) = lm.try_div(&dm) {
                let c = lc.div(&dc);
                quotients[i] = quotients[i].add(&Polynomial::term(&ctx, q.clone(), c.clone()));
                rest = rest.sub(&d.mul_term(&q, &c));
                continue 'outer;
            }
        }
        remainder_terms.push((lm.clone(), lc.clone()));
        rest = rest.sub(&Polynomial::term(&ctx, lm, lc));
    }
    (quotients, Polynomial::from_terms(&ctx, remainder_terms))
}

trait ClonedPair {
    fn cloned_pair(&self) -> Option<(Monomial, Scalar)>;
}

impl ClonedPair for Option<&(Monomial, Scalar)> {
    fn cloned_pair(&self) -> Option<(Monomial, Scalar)> {
        self.map(|(m, c)| (m.clone(), c.clone()))
    }
}

/// Exact division by a single polynomial; errors when the remainder is nonzero.
pub fn exact_div(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let (q, r) = divide_full(f, &[g]);
    if r.is_zero() {
        Ok(q.into_iter().next().unwrap())
    } else {
        Err(GroebnerError::InexactDivision)
    }
}

struct Traced {
    poly: Polynomial,
    cof: Vec<Polynomial>,
}

fn s_pair(ctx: &Arc<RingCtx>, a: &Traced, b: &Traced) -> Traced {
    let (lma, lca) = a.poly.leading_term().unwrap().clone();
    let (lmb, lcb) = b.poly.leading_term().unwrap().clone();
    let lcm = lma.lcm(&lmb);
    let ua = lcm.try_div(&lma).unwrap();
    let ub = lcm.try_div(&lmb).unwrap();
    let poly = a.poly.mul_term(&ua, &lcb).sub(&b.poly.mul_term(&ub, &lca));
    let cof = a
        .cof
        .iter()
        .zip(&b.cof)
        .map(|(ca, cb)| ca.mul_term(&ua, &lcb).sub(&cb.mul_term(&ub, &lca)))
        .collect();
    let _ = ctx;
    Traced { poly, cof }
}

fn reduce_traced(ctx: &Arc<RingCtx>, f: Traced, basis: &[Traced]) -> Traced {
    let polys: Vec<&Polynomial> = basis.iter().map(|t| &t.poly).collect();
    let (q, r) = divide_full(&f.poly, &polys);
    let mut cof = f.cof;
    for (j, qj) in q.iter().enumerate() {
        if qj.is_zero() {
            continue;
        }
        for (c, bc) in cof.iter_mut().zip(&basis[j].cof) {
            if !bc.is_zero() {
                *c = c.sub(&qj.mul(bc));
            }
        }
    }
    let _ = ctx;
    Traced { poly: r, cof }
}

/// Reduced Gröbner basis plus the cofactor matrix over the input generators.
pub fn buchberger_traced(
    ctx: &Arc<RingCtx>,
    gens: &[Polynomial],
) -> (Vec<Polynomial>, Vec<Vec<Polynomial>>) {
    let n = gens.len();
    let unit = |i: usize| {
        let mut v = vec![Polynomial::zero(ctx); n];
        v[i] = Polynomial::one(ctx);
        v
    };
    let mut basis: Vec<Traced> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() {
            basis.push(Traced { poly: g.clone(), cof: unit(i) });
        }
    }
    // normal strategy: smallest lcm first, ties by index; the heap keys are
    // fixed at insertion since leading monomials never change
    let mut pairs: std::collections::BinaryHeap<std::cmp::Reverse<PairEntry>> =
        std::collections::BinaryHeap::new();
    let push_pair = |pairs: &mut std::collections::BinaryHeap<std::cmp::Reverse<PairEntry>>,
                         basis: &[Traced],
                         i: usize,
                         j: usize| {
        let lcm = pair_lcm(basis, i, j);
        pairs.push(std::cmp::Reverse(PairEntry {
            deg: lcm.degree(),
            lcm,
            i,
            j,
            order: ctx.order(),
        }));
    };
    for i in 0..basis.len() {
        for j in 0..i {
            push_pair(&mut pairs, &basis, j, i);
        }
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    while let Some(std::cmp::Reverse(entry)) = pairs.pop() {
        let (i, j) = (entry.i, entry.j);
        done.insert((i, j));

        let lmi = basis[i].poly.leading_monomial().unwrap();
        let lmj = basis[j].poly.leading_monomial().unwrap();
        if lmi.is_coprime(lmj) {
            continue; // product criterion
        }
        let lcm = lmi.lcm(lmj);
        // chain criterion: some k divides the lcm and both mixed pairs are done
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].poly.leading_monomial().unwrap().divides(&lcm)
                && done.contains(&norm_pair(i, k))
                && done.contains(&norm_pair(j, k))
        });
        if chain {
            continue;
        }

        let s = s_pair(ctx, &basis[i], &basis[j]);
        let r = reduce_traced(ctx, s, &basis);
        if !r.poly.is_zero() {
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                push_pair(&mut pairs, &basis, k, new);
            }
        }
    }

    reduce_basis_traced(ctx, basis, gens)
}

struct PairEntry {
    deg: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
    order: MonomialOrder,
}

impl PartialEq for PairEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PairEntry {}

impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.order.cmp(&self.lcm, &other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

fn pair_lcm(basis: &[Traced], i: usize, j: usize) -> Monomial {
    basis[i]
        .poly
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].poly.leading_monomial().unwrap())
}

fn norm_pair(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn reduce_basis_traced(
    ctx: &Arc<RingCtx>,
    basis: Vec<Traced>,
    gens: &[Polynomial],
) -> (Vec<Polynomial>, Vec<Vec<Polynomial>>) {
    // minimalize: drop any element whose leading monomial is divisible by
    // another survivor's leading monomial
    let mut alive: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !alive[i] {
            continue;
        }
        let lmi = basis[i].poly.leading_monomial().unwrap().clone();
        for (j, item) in basis.iter().enumerate() {
            if i == j || !alive[j] {
                continue;
            }
            let lmj = item.poly.leading_monomial().unwrap();
            if lmj.divides(&lmi) && (lmj != &lmi || j < i) {
                alive[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Traced> = basis
        .into_iter()
        .zip(alive)
        .filter_map(|(t, a)| if a { Some(t) } else { None })
        .collect();

    // tail-reduce each element against the current state of the others
    for i in 0..kept.len() {
        let me = Traced { poly: kept[i].poly.clone(), cof: kept[i].cof.clone() };
        let others: Vec<Traced> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| Traced { poly: t.poly.clone(), cof: t.cof.clone() })
            .collect();
        let r = reduce_traced(ctx, me, &others);
        debug_assert!(!r.poly.is_zero());
        kept[i] = r;
    }

    // normalize to monic and sort ascending by leading monomial
    for t in &mut kept {
        let inv = t.poly.leading_coeff().unwrap().inv();
        t.poly = t.poly.scale(&inv);
        for c in &mut t.cof {
            *c = c.scale(&inv);
        }
    }
    kept.sort_by(|a, b| {
        ctx.cmp_monomials(a.poly.leading_monomial().unwrap(), b.poly.leading_monomial().unwrap())
    });

    if cfg!(debug_assertions) {
        for t in &kept {
            let mut acc = Polynomial::zero(ctx);
            for (c, g) in t.cof.iter().zip(gens) {
                acc = acc.add(&c.mul(g));
            }
            debug_assert_eq!(acc, t.poly, "trace invariant broken");
        }
    }

    let gb = kept.iter().map(|t| t.poly.clone()).collect();
    let trace = kept.into_iter().map(|t| t.cof).collect();
    (gb, trace)
}

/// Generating set of the syzygy module of `gens`: all vectors c with
/// Σ c_i·gens_i = 0. Assembled from the S-pair reductions of the Gröbner
/// basis (which generate the syzygies of the basis) pulled back through the
/// cofactor matrices, plus the rows of I − Q·T.
pub fn syzygies(ctx: &Arc<RingCtx>, gens: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let n = gens.len();
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    // unit vectors on zero generators are syzygies
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            let mut v = vec![Polynomial::zero(ctx); n];
            v[i] = Polynomial::one(ctx);
            out.push(v);
        }
    }
    let (gb, trace) = buchberger_traced(ctx, gens);
    if gb.is_empty() {
        return out;
    }
    let gb_refs: Vec<&Polynomial> = gb.iter().collect();

    // Q: each generator expressed over the basis
    let mut q_rows: Vec<Vec<Polynomial>> = Vec::new();
    for g in gens {
        let (q, r) = divide_full(g, &gb_refs);
        assert!(r.is_zero());
        q_rows.push(q);
    }

    // syzygies of the basis from every S-pair reduction
    let mut basis_syz: Vec<Vec<Polynomial>> = Vec::new();
    for i in 0..gb.len() {
        for j in (i + 1)..gb.len() {
            let (lmi, lci) = gb[i].leading_term().unwrap().clone();
            let (lmj, lcj) = gb[j].leading_term().unwrap().clone();
            let lcm = lmi.lcm(&lmj);
            let ui = lcm.try_div(&lmi).unwrap();
            let uj = lcm.try_div(&lmj).unwrap();
            let s = gb[i].mul_term(&ui, &lcj).sub(&gb[j].mul_term(&uj, &lci));
            let (qs, r) = divide_full(&s, &gb_refs);
            assert!(r.is_zero(), "input basis is not a Groebner basis");
            let mut v = vec![Polynomial::zero(ctx); gb.len()];
            v[i] = Polynomial::term(ctx, ui, lcj);
            v[j] = v[j].sub(&Polynomial::term(ctx, uj, lci));
            for (k, qk) in qs.iter().enumerate() {
                v[k] = v[k].sub(qk);
            }
            basis_syz.push(v);
        }
    }

    // pull back: s · T
    for s in &basis_syz {
        let mut v = vec![Polynomial::zero(ctx); n];
        for (j, sj) in s.iter().enumerate() {
            if sj.is_zero() {
                continue;
            }
            for (i, t) in trace[j].iter().enumerate() {
                if !t.is_zero() {
                    v[i] = v[i].add(&sj.mul(t));
                }
            }
        }
        if v.iter().any(|p| !p.is_zero()) {
            out.push(v);
        }
    }

    // rows of I − Q·T
    for i in 0..n {
        let mut v = vec![Polynomial::zero(ctx); n];
        v[i] = Polynomial::one(ctx);
        for (j, qj) in q_rows[i].iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            for (k, t) in trace[j].iter().enumerate() {
                if !t.is_zero() {
                    v[k] = v[k].sub(&qj.mul(t));
                }
            }
        }
        if v.iter().any(|p| !p.is_zero()) {
            out.push(v);
        }
    }

    for v in &out {
        let mut acc = Polynomial::zero(ctx);
        for (c, g) in v.iter().zip(gens) {
            acc = acc.add(&c.mul(g));
        }
        assert!(acc.is_zero(), "syzygy check failed");
    }
    out
}

/// Buchberger post-check: every S-polynomial of the set reduces to zero.
pub fn is_groebner_basis(ctx: &Arc<RingCtx>, basis: &[Polynomial]) -> bool {
    let refs: Vec<&Polynomial> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let (lmi, lci) = basis[i].leading_term().unwrap().clone();
            let (lmj, lcj) = basis[j].leading_term().unwrap().clone();
            let lcm = lmi.lcm(&lmj);
            let ui = lcm.try_div(&lmi).unwrap();
            let uj = lcm.try_div(&lmj).unwrap();
            let s = basis[i].mul_term(&ui, &lcj).sub(&basis[j].mul_term(&uj, &lci));
            let (_, r) = divide_full(&s, &refs);
            if !r.is_zero() {
                return false;
            }
        }
    }
    let _ = ctx;
    true
}

/// Comparison helper exposed for deterministic sorting of printed output.
pub fn cmp_polys_by_lm(ctx: &Arc<RingCtx>, a: &Polynomial, b: &Polynomial) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => ctx.cmp_monomials(x, y),
    }
}
