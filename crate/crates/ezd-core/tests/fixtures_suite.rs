//! Cross-cutting checks on the named fixture rings: the two-periodic
//! complex of every verified pair is exact, colon images match, and the
//! summand reduction conserves Hilbert data in the graded engine.

mod common;

use ezd_core::extension::ExtensionMatrix;
use ezd_core::family::{reduce_decomposable, FamilyError};
use ezd_core::fp_module::{verify_exact_pair, FPModule, Window};
use ezd_core::parser::parse_polynomial;
use ezd_core::ring::{is_exact_zerodivisor_pair, QuotientRing, RingElement};
use ezd_core::rmatrix::RMatrix;
use ezd_core::{FieldKind, Polynomial, RingCtx};
use std::sync::Arc;

fn ring_over(field: FieldKind, vars: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
    let ctx = RingCtx::grevlex(field, vars);
    let rels: Vec<Polynomial> = rels.iter().map(|s| parse_polynomial(s, &ctx).unwrap()).collect();
    QuotientRing::new(&ctx, rels).unwrap()
}

fn one_by_one(ring: &Arc<QuotientRing>, e: &RingElement) -> RMatrix {
    RMatrix::new(ring, 1, 1, vec![e.rep().clone()]).unwrap()
}

/// For a verified pair the complex … → R → R → R → … with alternating
/// multiplications is exact at every checkable spot.
#[test]
fn periodic_complex_is_exact_for_every_fixture_pair() {
    let fixtures: Vec<(Arc<QuotientRing>, &str, &str)> = vec![
        (ring_over(FieldKind::Rational, &["x"], &["x^3"]), "x", "x^2"),
        (ring_over(FieldKind::Rational, &["x", "y"], &["x*y"]), "x", "y"),
        (
            ring_over(FieldKind::prime(2), &["x", "y", "z"], &["x^2", "y^2", "y*z", "z^2"]),
            "x",
            "x",
        ),
        (
            ring_over(
                FieldKind::Rational,
                &["x", "y", "z"],
                &["x^2 - y*z", "y^2 - x*z", "z^2", "x*y"],
            ),
            "x",
            "y",
        ),
        (
            ring_over(
                FieldKind::Rational,
                &["x", "y", "z"],
                &["x^2 - y*z", "y^2 - x*z", "z^2", "x*y"],
            ),
            "z",
            "z",
        ),
        (ring_over(FieldKind::Rational, &["u", "v", "X", "Y"], &["X^2*Y"]), "Y", "X^2"),
        (common::determinantal_ring(), "x", "y"),
    ];
    for (ring, xs, ys) in fixtures {
        let x = RingElement::parse(&ring, xs).unwrap();
        let y = RingElement::parse(&ring, ys).unwrap();
        let pair = is_exact_zerodivisor_pair(&ring, &x, &y).unwrap();
        let mx = one_by_one(&ring, pair.x());
        let my = one_by_one(&ring, pair.y());
        let window = Window::for_ring(&ring, 8);
        assert_eq!(verify_exact_pair(&mx, &my, window), Ok(true), "ker(x) = im(y) on {xs},{ys}");
        assert_eq!(verify_exact_pair(&my, &mx, window), Ok(true), "ker(y) = im(x) on {xs},{ys}");
    }
}

/// The colon of the defining ideal by x has the same image in R as (x) on
/// the self-paired Artinian fixture.
#[test]
fn colon_image_matches_on_artinian_fixture() {
    let ring = common::artinian_ring(FieldKind::prime(2));
    let x = parse_polynomial("x", ring.ctx()).unwrap();
    let colon = ring.defining_ideal().colon(&x).unwrap();
    assert!(colon.equal(&ring.push_ideal(&[x])));
}

/// Linear-form ideals with different coefficients stay different after
/// adjoining the fixture relations: the separation engine of the family.
#[test]
fn adjoined_linear_ideals_are_distinguished() {
    let ring = common::artinian_ring(FieldKind::prime(5));
    let a = ring.push_ideal(&[
        parse_polynomial("x", ring.ctx()).unwrap(),
        parse_polynomial("y + 2*z", ring.ctx()).unwrap(),
    ]);
    let b = ring.push_ideal(&[
        parse_polynomial("x", ring.ctx()).unwrap(),
        parse_polynomial("y + 3*z", ring.ctx()).unwrap(),
    ]);
    assert!(!a.equal(&b));
    assert!(a.equal(&a.clone()));
}

/// Summand reduction in the graded engine: Hilbert values split degreewise.
#[test]
fn graded_reduction_conserves_hilbert_values() {
    let ring = common::determinantal_ring();
    let x = RingElement::parse(&ring, "x").unwrap();
    let y = RingElement::parse(&ring, "y").unwrap();
    let pair = is_exact_zerodivisor_pair(&ring, &x, &y).unwrap();
    let v = RingElement::parse(&ring, "v").unwrap();
    let w = RingElement::parse(&ring, "w").unwrap();
    let vw = RingElement::parse(&ring, "v + w").unwrap();
    let ext = ExtensionMatrix::new(&pair, &[v, w, vw]).unwrap();
    let red = reduce_decomposable(&ext).unwrap();
    assert_eq!(red.reduced.n(), 2);
    assert!(red.conservation.contains("degreewise"), "{}", red.conservation);

    // already-minimal witnesses refuse
    let v2 = RingElement::parse(&ring, "v").unwrap();
    let w2 = RingElement::parse(&ring, "w").unwrap();
    let minimal = ExtensionMatrix::new(&pair, &[v2, w2]).unwrap();
    assert!(matches!(reduce_decomposable(&minimal), Err(FamilyError::NothingToReduce(2))));
}

/// The module multiplicity of R/(y) over the determinantal quotient is the
/// multiplicity of the ring R/(y) itself.
#[test]
fn quotient_module_multiplicity_matches_ring() {
    let ring = common::determinantal_ring();
    let y = parse_polynomial("y", ring.ctx()).unwrap();
    let m = FPModule::cokernel(RMatrix::new(&ring, 1, 1, vec![y]).unwrap());
    assert_eq!(m.multiplicity(8).unwrap(), 3);
}
