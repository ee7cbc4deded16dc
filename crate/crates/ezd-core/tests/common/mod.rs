//! Shared fixtures and randomized property runners. The acceptance gate and
//! the standalone property suite both call these with their own case counts;
//! every assertion is exact.

#![allow(dead_code)]

use ezd_core::endo::{compare_modules, Comparison};
use ezd_core::extension::ExtensionMatrix;
use ezd_core::family::{build_member, FamilyConfig};
use ezd_core::fp_module::{exact_kernel, graded_kernel, FPModule, Window};
use ezd_core::groebner::{divide_full, is_groebner_basis, syzygies, Ideal};
use ezd_core::hilbert::{ideal_degree_dim, standard_monomial_count_incl_excl, standard_monomials};
use ezd_core::invariant::find_witnesses;
use ezd_core::linalg::KMatrix;
use ezd_core::monomial::monomials_of_degree;
use ezd_core::parser::parse_polynomial;
use ezd_core::resolution::minimal_free_resolution;
use ezd_core::ring::{
    g_regularity_certificate, is_exact_zerodivisor_pair, EzdPair, GRegularityCertificate,
    QuotientRing, RingElement,
};
use ezd_core::rmatrix::{ElementaryOp, RMatrix};
use ezd_core::{FieldKind, Monomial, Polynomial, RingCtx, Scalar};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(ctx: &Arc<RingCtx>, s: &str) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

pub fn artinian_ring(field: FieldKind) -> Arc<QuotientRing> {
    let ctx = RingCtx::grevlex(field, &["x", "y", "z"]);
    let rels = ["x^2", "y^2", "y*z", "z^2"].iter().map(|s| p(&ctx, s)).collect();
    QuotientRing::new(&ctx, rels).unwrap()
}

pub fn artinian_pair(field: FieldKind) -> EzdPair {
    let ring = artinian_ring(field);
    let x = RingElement::parse(&ring, "x").unwrap();
    is_exact_zerodivisor_pair(&ring, &x, &x).unwrap()
}

pub fn hypersurface() -> Arc<QuotientRing> {
    let ctx = RingCtx::grevlex(FieldKind::Rational, &["x", "y"]);
    QuotientRing::new(&ctx, vec![p(&ctx, "x*y")]).unwrap()
}

pub fn determinantal_ring() -> Arc<QuotientRing> {
    let ctx = RingCtx::grevlex(FieldKind::prime(2), &["v", "w", "x", "y", "z"]);
    let rels = ["v*y - w*x", "v*z - x^2", "w*z", "x*y"].iter().map(|s| p(&ctx, s)).collect();
    QuotientRing::new(&ctx, rels).unwrap()
}

pub fn greg_of_quotient(pair: &EzdPair) -> GRegularityCertificate {
    let ring_x = pair.ring().mod_out(&[pair.x().rep().clone()]).unwrap();
    g_regularity_certificate(&ring_x, None).unwrap()
}

pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldKind) -> Scalar {
    match field {
        FieldKind::Rational => Scalar::from_integer(field, rng.gen_range(-4i64..=4)),
        FieldKind::Prime(q) => Scalar::from_integer(field, rng.gen_range(0..q) as i64),
    }
}

pub fn random_nonzero_scalar<R: Rng>(rng: &mut R, field: FieldKind) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32) -> Monomial {
    let mut exps = vec![0u16; nvars];
    let deg = rng.gen_range(0..=max_deg);
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps)
}

pub fn random_poly<R: Rng>(
    rng: &mut R,
    ctx: &Arc<RingCtx>,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    let terms = (0..k)
        .map(|_| (random_monomial(rng, ctx.nvars(), max_deg), random_scalar(rng, ctx.field())))
        .collect();
    Polynomial::from_terms(ctx, terms)
}

pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    ctx: &Arc<RingCtx>,
    deg: u32,
    max_terms: usize,
) -> Polynomial {
    let pool = monomials_of_degree(ctx.nvars(), deg, ctx.order());
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| (pool[rng.gen_range(0..pool.len())].clone(), random_scalar(rng, ctx.field())))
        .collect();
    Polynomial::from_terms(ctx, terms)
}

fn random_ctx<R: Rng>(rng: &mut R) -> Arc<RingCtx> {
    let field = if rng.gen_bool(0.5) { FieldKind::Rational } else { FieldKind::prime(5) };
    if rng.gen_bool(0.5) {
        RingCtx::grevlex(field, &["x", "y"])
    } else {
        RingCtx::grevlex(field, &["x", "y", "z"])
    }
}

// -------------------------------------------------------------------------
// property runners (each assertion exact)
// -------------------------------------------------------------------------

/// Reduced bases are independent of generator order.
pub fn check_gb_permutation_invariance(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let k = rng.gen_range(1..=3);
        let mut gens: Vec<Polynomial> =
            (0..k).map(|_| random_poly(&mut rng, &ctx, 3, 3)).collect();
        let a = Ideal::new(&ctx, gens.clone());
        let reference = a.groebner_basis().to_vec();
        gens.shuffle(&mut rng);
        let b = Ideal::new(&ctx, gens);
        assert_eq!(reference, b.groebner_basis(), "reduced basis depends on generator order");
    }
}

/// Every S-polynomial of a computed basis reduces to zero.
pub fn check_buchberger_post_criterion(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng, &ctx, 3, 3)).collect();
        let i = Ideal::new(&ctx, gens);
        assert!(is_groebner_basis(&ctx, i.groebner_basis()));
    }
}

/// Degreewise agreement of the colon ideal with the linear-algebra oracle:
/// the degree-d piece of (I : f) equals {g of degree d : g·f ∈ I}.
pub fn check_colon_la_oracle(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for case in 0..cases {
        let field = if case % 2 == 0 { FieldKind::prime(5) } else { FieldKind::Rational };
        let ctx = RingCtx::grevlex(field, &["x", "y", "z"]);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                random_homogeneous(&mut rng, &ctx, d, 2)
            })
            .collect();
        let ideal = Ideal::new(&ctx, gens);
        let fdeg = rng.gen_range(1..=2);
        let f = loop {
            let f = random_homogeneous(&mut rng, &ctx, fdeg, 2);
            if !f.is_zero() {
                break f;
            }
        };
        let colon = ideal.colon(&f).unwrap();
        for d in 0..=6u32 {
            // oracle: kernel of g ↦ NF(g·f) on all monomials of degree d
            let dom = monomials_of_degree(3, d, ctx.order());
            let cod = standard_monomials(&ideal, d + fdeg);
            let index: std::collections::HashMap<&Monomial, usize> =
                cod.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut mat = KMatrix::zero(field, cod.len(), dom.len());
            for (col, u) in dom.iter().enumerate() {
                let prod = ideal.normal_form(&f.mul_term(u, &Scalar::one(field)));
                for (m, c) in prod.terms() {
                    mat.set(index[m], col, c.clone());
                }
            }
            let oracle_dim = mat.kernel_basis().len();
            let colon_dim = ideal_degree_dim(&colon, d);
            assert_eq!(
                colon_dim, oracle_dim,
                "colon degree {d} disagreement: ideal {ideal:?}, f = {f}"
            );
            // soundness: every colon generator multiplied by f is in I
            for g in colon.generators() {
                assert!(ideal.contains(&g.mul(&f)));
            }
        }
    }
}

/// The syzygy route computes the same colon ideal as the elimination route.
pub fn check_colon_syzygy_route(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = RingCtx::grevlex(FieldKind::prime(5), &["x", "y", "z"]);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_homogeneous(&mut rng, &ctx, d, 2)
            })
            .collect();
        let ideal = Ideal::new(&ctx, gens.clone());
        let fdeg = rng.gen_range(1..=2);
        let f = loop {
            let f = random_homogeneous(&mut rng, &ctx, fdeg, 2);
            if !f.is_zero() {
                break f;
            }
        };
        let elim_route = ideal.colon(&f).unwrap();
        // syzygy route: first coordinates of the syzygies of [f, gens...]
        let mut list = vec![f.clone()];
        list.extend(gens.iter().cloned());
        let syz = syzygies(&ctx, &list);
        let first: Vec<Polynomial> = syz.into_iter().map(|v| v.into_iter().next().unwrap()).collect();
        let syz_route = Ideal::new(&ctx, first);
        assert!(
            elim_route.equal(&syz_route),
            "colon routes disagree for I = {:?}, f = {f}",
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()
        );
    }
}

/// Membership certificates recombine exactly on constructed members.
pub fn check_membership_certificates(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng, &ctx, 2, 2)).collect();
        let ideal = Ideal::new(&ctx, gens.clone());
        // build a member from known cofactors
        let mut f = Polynomial::zero(&ctx);
        for g in &gens {
            let c = random_poly(&mut rng, &ctx, 2, 2);
            f = f.add(&c.mul(g));
        }
        let cert = ideal.member_certificate(&f).expect("constructed members are members");
        assert!(cert.verify(&gens));
    }
}

/// ideal_equal is an equivalence on redundant presentations of one ideal.
pub fn check_ideal_equal_equivalence(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng, &ctx, 2, 2)).collect();
        let a = Ideal::new(&ctx, gens.clone());
        // presentation 2: add a random combination
        let mut extra = Polynomial::zero(&ctx);
        for g in &gens {
            extra = extra.add(&random_poly(&mut rng, &ctx, 1, 2).mul(g));
        }
        let mut gens2 = gens.clone();
        gens2.push(extra);
        gens2.shuffle(&mut rng);
        let b = Ideal::new(&ctx, gens2);
        // presentation 3: scale a generator by a unit
        let mut gens3 = gens.clone();
        if let Some(first) = gens3.first_mut() {
            *first = first.scale(&random_nonzero_scalar(&mut rng, ctx.field()));
        }
        let c = Ideal::new(&ctx, gens3);
        assert!(a.equal(&a) && a.equal(&b) && b.equal(&a) && b.equal(&c) && a.equal(&c));
    }
}

/// Inclusion–exclusion over minimal monomial generators equals the direct
/// standard-monomial count.
pub fn check_hilbert_incl_excl(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = RingCtx::grevlex(FieldKind::Rational, &["x", "y", "z"]);
        let k = rng.gen_range(1..=4);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| {
                let m = loop {
                    let m = random_monomial(&mut rng, 3, 3);
                    if !m.is_one() {
                        break m;
                    }
                };
                Polynomial::term(&ctx, m, Scalar::one(FieldKind::Rational))
            })
            .collect();
        let ideal = Ideal::new(&ctx, gens);
        let lms: Vec<Monomial> =
            ideal.groebner_basis().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        for d in 0..=6 {
            let direct = standard_monomials(&ideal, d).len() as i64;
            assert_eq!(direct, standard_monomial_count_incl_excl(3, &lms, d));
        }
    }
}

/// Fitting ideals are invariant under invertible row/column operations.
pub fn check_fitting_invariance(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let rings = [artinian_ring(FieldKind::prime(5)), determinantal_ring()];
    for case in 0..cases {
        let ring = &rings[case % rings.len()];
        let ctx = ring.ctx().clone();
        let rows = rng.gen_range(1..=2usize);
        let cols = rng.gen_range(1..=3usize);
        let entries: Vec<Polynomial> = (0..rows * cols)
            .map(|_| {
                // entries in the maximal ideal keep presentations minimal
                let d = rng.gen_range(1..=2);
                if rng.gen_bool(0.2) {
                    Polynomial::zero(&ctx)
                } else {
                    random_homogeneous(&mut rng, &ctx, d, 2)
                }
            })
            .collect();
        let m = RMatrix::new(ring, rows, cols, entries).unwrap();
        let module = FPModule::cokernel(m.clone());
        let before: Vec<Ideal> = (0..=rows).map(|j| module.fitting_ideal(j)).collect();

        let mut twisted = m.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let op = match rng.gen_range(0..6) {
                0 if rows > 1 => ElementaryOp::SwapRows(0, rng.gen_range(1..rows)),
                1 if cols > 1 => ElementaryOp::SwapCols(0, rng.gen_range(1..cols)),
                2 => ElementaryOp::ScaleRow(
                    rng.gen_range(0..rows),
                    Polynomial::constant(&ctx, random_nonzero_scalar(&mut rng, ctx.field())),
                ),
                3 => ElementaryOp::ScaleCol(
                    rng.gen_range(0..cols),
                    Polynomial::constant(&ctx, random_nonzero_scalar(&mut rng, ctx.field())),
                ),
                4 if rows > 1 => {
                    let src = rng.gen_range(0..rows);
                    let dst = (src + 1) % rows;
                    ElementaryOp::AddRowMultiple {
                        src,
                        dst,
                        factor: random_homogeneous(&mut rng, &ctx, 1, 2),
                    }
                }
                _ if cols > 1 => {
                    let src = rng.gen_range(0..cols);
                    let dst = (src + 1) % cols;
                    ElementaryOp::AddColMultiple {
                        src,
                        dst,
                        factor: random_homogeneous(&mut rng, &ctx, 1, 2),
                    }
                }
                _ => continue,
            };
            twisted.apply(&op);
        }
        let module2 = FPModule::cokernel(twisted);
        for (j, fitt) in before.iter().enumerate() {
            assert!(
                fitt.equal(&module2.fitting_ideal(j)),
                "Fitt_{j} changed under elementary operations"
            );
        }
        // containment chain
        for j in 0..rows {
            assert!(before[j + 1].contains_ideal(&before[j]));
        }
    }
}

/// Consecutive differentials of every produced resolution compose to zero,
/// and all of them are minimal.
pub fn check_resolution_compositions(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let pairs = [artinian_pair(FieldKind::prime(2)), artinian_pair(FieldKind::prime(5))];
    for case in 0..cases {
        let pair = &pairs[case % pairs.len()];
        let ring = pair.ring().clone();
        let n = rng.gen_range(0..=2usize);
        let wits: Vec<RingElement> = (0..n)
            .map(|_| {
                let poly = random_homogeneous(&mut rng, ring.ctx(), 1, 2);
                RingElement::new(&ring, &poly)
            })
            .collect();
        let ext = ExtensionMatrix::new(pair, &wits).unwrap();
        let module = ext.module();
        let with_companion = case % 2 == 0;
        let companion = ext.companion();
        let res = minimal_free_resolution(
            &module,
            4,
            Window::Exact,
            if with_companion { Some(&companion) } else { None },
        )
        .unwrap();
        for w in res.differentials.windows(2) {
            assert!(w[0].matmul(&w[1]).is_zero(), "nonzero composition in a resolution");
        }
        assert!(res.minimal.iter().all(|&b| b), "non-minimal differential produced");
    }
}

/// Exact zerodivisor verification is symmetric in the pair.
pub fn check_ezd_symmetry(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let rings = [
        artinian_ring(FieldKind::prime(2)),
        artinian_ring(FieldKind::prime(5)),
        hypersurface(),
    ];
    for case in 0..cases {
        let ring = &rings[case % rings.len()];
        let a = RingElement::new(ring, &random_poly(&mut rng, ring.ctx(), 2, 2));
        let b = RingElement::new(ring, &random_poly(&mut rng, ring.ctx(), 2, 2));
        let fwd = is_exact_zerodivisor_pair(ring, &a, &b).is_ok();
        let bwd = is_exact_zerodivisor_pair(ring, &b, &a).is_ok();
        assert_eq!(fwd, bwd, "asymmetric verdict for ({a}, {b})");
        if fwd {
            assert!(a.mul(&b).is_zero());
        }
    }
}

/// Length is additive over every verified extension sequence.
pub fn check_length_additivity(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let pairs = [artinian_pair(FieldKind::prime(2)), artinian_pair(FieldKind::prime(5))];
    for case in 0..cases {
        let pair = &pairs[case % pairs.len()];
        let ring = pair.ring().clone();
        let n = rng.gen_range(0..=3usize);
        let wits: Vec<RingElement> = (0..n)
            .map(|_| RingElement::new(&ring, &random_homogeneous(&mut rng, ring.ctx(), 1, 2)))
            .collect();
        let ext = ExtensionMatrix::new(pair, &wits).unwrap();
        ext.verify_ses(Window::Exact).unwrap();
        let ring_x = ring.mod_out(&[pair.x().rep().clone()]).unwrap();
        let ring_y = ring.mod_out(&[pair.y().rep().clone()]).unwrap();
        let expected = n * ring_x.length().unwrap() + ring_y.length().unwrap();
        assert_eq!(ext.module().length().unwrap(), expected);
    }
}

/// The graded truncated engine agrees with the exact engine on Artinian
/// fixtures: kernel dimensions, lengths, resolution shapes and periods.
pub fn check_engine_agreement(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let rings = [artinian_ring(FieldKind::prime(2)), artinian_ring(FieldKind::prime(5))];
    for case in 0..cases {
        let ring = &rings[case % rings.len()];
        let ctx = ring.ctx().clone();
        let size = rng.gen_range(1..=2usize);
        let entries: Vec<Polynomial> = (0..size * size)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Polynomial::zero(&ctx)
                } else {
                    random_homogeneous(&mut rng, &ctx, 1, 2)
                }
            })
            .collect();
        let m = RMatrix::new(ring, size, size, entries).unwrap();
        // socle degree of these fixtures is 2, so degree 4 sees everything
        let top = 4u32;
        let flat = exact_kernel(&m).unwrap();
        let graded = graded_kernel(&m, top).unwrap();
        let graded_total: usize = graded.iter().map(|(_, v)| v.len()).sum();
        assert_eq!(flat.len(), graded_total, "kernel dimensions disagree");

        let module = FPModule::cokernel(m);
        let length = module.length().unwrap();
        let hilbert_total: usize =
            module.hilbert_values(top).unwrap().iter().map(|&(_, v)| v).sum();
        assert_eq!(length, hilbert_total, "length disagrees with Hilbert sum");

        let exact_res = minimal_free_resolution(&module, 3, Window::Exact, None).unwrap();
        let graded_res =
            minimal_free_resolution(&module, 3, Window::Truncated(top + 2), None).unwrap();
        assert_eq!(exact_res.differentials.len(), graded_res.differentials.len());
        for (a, b) in exact_res.differentials.iter().zip(&graded_res.differentials) {
            assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()), "resolution shapes disagree");
        }
        assert_eq!(exact_res.period, graded_res.period);
    }
}

/// Normal forms are linear over the field.
pub fn check_normal_form_linearity(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let gens: Vec<Polynomial> = (0..2).map(|_| random_poly(&mut rng, &ctx, 2, 2)).collect();
        let ideal = Ideal::new(&ctx, gens);
        let f = random_poly(&mut rng, &ctx, 3, 3);
        let g = random_poly(&mut rng, &ctx, 3, 3);
        let lhs = ideal.normal_form(&f.add(&g));
        let rhs = ideal.normal_form(&ideal.normal_form(&f).add(&ideal.normal_form(&g)));
        assert_eq!(lhs, rhs);
        // idempotence
        assert_eq!(ideal.normal_form(&lhs), lhs);
    }
}

/// Division invariant: f = Σ q_i d_i + r exactly.
pub fn check_division_identity(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    for _ in 0..cases {
        let ctx = random_ctx(&mut rng);
        let divisors: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(&mut rng, &ctx, 2, 2))
            .filter(|p| !p.is_zero())
            .collect();
        if divisors.is_empty() {
            continue;
        }
        let f = random_poly(&mut rng, &ctx, 3, 3);
        let refs: Vec<&Polynomial> = divisors.iter().collect();
        let (q, r) = divide_full(&f, &refs);
        let mut acc = r;
        for (qi, di) in q.iter().zip(&divisors) {
            acc = acc.add(&qi.mul(di));
        }
        assert_eq!(acc, f);
    }
}

/// Family members generated with companion candidates have literally
/// periodic differentials: d1 = d3 and d2 = d4.
pub fn check_member_period_entrywise(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let pairs = [artinian_pair(FieldKind::prime(2)), artinian_pair(FieldKind::prime(5))];
    for case in 0..cases {
        let pair = &pairs[case % pairs.len()];
        let greg = greg_of_quotient(pair);
        let n = rng.gen_range(0..=2usize);
        let wits = match find_witnesses(pair, n, 6) {
            Ok(w) => w,
            Err(_) => continue,
        };
        let config = FamilyConfig { steps: 4, ..FamilyConfig::default() };
        let parameter = RingElement::parse(pair.ring(), "0").unwrap();
        let member = build_member(pair, &wits, parameter, &greg, &config).unwrap();
        let d = &member.resolution.differentials;
        assert!(d.len() >= 4);
        assert_eq!(d[0], d[2], "d1 != d3 for n = {n}");
        assert_eq!(d[1], d[3], "d2 != d4 for n = {n}");
    }
}

/// Certificate soundness against brute force: whenever the Fitting-ideal
/// certificate says Certified, the exhaustive idempotent search must not
/// find a decomposition (Unknown on budget overrun is acceptable).
pub fn check_certificate_soundness(budget: u64) {
    use ezd_core::endo::{is_indecomposable_bruteforce, IndecomposabilityVerdict};
    use ezd_core::family::{certify_indecomposable, CertVerdict};
    for field in [FieldKind::prime(2), FieldKind::prime(3)] {
        let pair = artinian_pair(field);
        let greg = greg_of_quotient(&pair);
        for n in 0..=2usize {
            let wits = find_witnesses(&pair, n, 6).unwrap();
            let ext = ExtensionMatrix::new(&pair, &wits).unwrap();
            let cert = certify_indecomposable(&ext, &greg, Window::Exact).unwrap();
            assert_eq!(cert.verdict, CertVerdict::Certified);
            let brute = is_indecomposable_bruteforce(&ext.module(), budget).unwrap();
            assert!(
                !matches!(brute, IndecomposabilityVerdict::Decomposable { .. }),
                "brute force found a decomposition of a certified module (n = {n})"
            );
        }
    }
}

/// Modules of family parameters with distinct residues are separated by a
/// Fitting ideal.
pub fn check_family_separation(cases: usize, seed: u64) {
    let mut rng = rng(seed);
    let pair = artinian_pair(FieldKind::prime(5));
    let greg = greg_of_quotient(&pair);
    let a = RingElement::parse(pair.ring(), "y").unwrap();
    let b = RingElement::parse(pair.ring(), "z").unwrap();
    let config = FamilyConfig::default();
    for _ in 0..cases {
        let r1 = rng.gen_range(0..5u32);
        let r2 = rng.gen_range(0..5u32);
        let p1 = RingElement::parse(pair.ring(), &r1.to_string()).unwrap();
        let p2 = RingElement::parse(pair.ring(), &r2.to_string()).unwrap();
        let w1 = vec![a.add(&p1.mul(&b))];
        let w2 = vec![a.add(&p2.mul(&b))];
        let m1 = build_member(&pair, &w1, p1.clone(), &greg, &config).unwrap();
        let m2 = build_member(&pair, &w2, p2.clone(), &greg, &config).unwrap();
        let cmp = compare_modules(&m1.module, &m2.module, Window::Exact, 1 << 20).unwrap();
        if r1 != r2 {
            assert!(
                matches!(cmp, Comparison::NotIsomorphic { .. }),
                "parameters {r1} and {r2} not separated"
            );
            assert!(!m1.fitting.equal(&m2.fitting));
        } else {
            assert!(matches!(cmp, Comparison::Isomorphic { .. }));
        }
    }
}
