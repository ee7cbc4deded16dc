//! Graded quotient rings R = k[x₁..x_m]/I with normal-form representatives,
//! exact zerodivisor verification, residues, and G-regularity certificates.
//!
//! Power-series local rings are modeled by standard graded quotients: every
//! relation must be homogeneous, units are exactly the elements with nonzero
//! residue, and the maximal ideal is generated by the variable images.

use crate::groebner::Ideal;
use crate::hilbert::{hilbert_data, krull_dim, minimal_generators, standard_monomials, HilbertError};
use crate::monomial::Monomial;
use crate::parser::{parse_polynomial, ParseError};
use crate::poly::{Polynomial, RingCtx};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("the relations generate the unit ideal")]
    UnitIdeal,
    #[error("relation `{0}` is not homogeneous; the graded engine refuses it")]
    NonHomogeneous(String),
    #[error("element is zero in the quotient ring")]
    ZeroElement,
    #[error("element `{0}` is a unit (nonzero residue); it does not lie in the maximal ideal")]
    UnitElement(String),
    #[error("not an exact zerodivisor pair: {failing} = ({computed}) differs from ({expected})")]
    NotExactPair { failing: String, computed: String, expected: String },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// R = k[vars]/I with a frozen reduced basis, its Krull dimension, and the
/// finite monomial basis when the quotient is Artinian.
#[derive(Debug)]
pub struct QuotientRing {
    ctx: Arc<RingCtx>,
    defining: Ideal,
    dim: usize,
    monomial_basis: Option<Vec<Monomial>>,
    piece_cache: Mutex<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.defining.groebner_basis() == other.defining.groebner_basis()
    }
}

impl QuotientRing {
    /// Builds the quotient, rejecting the unit ideal and any inhomogeneous
    /// relation. An empty relation list yields the polynomial ring itself.
    pub fn new(ctx: &Arc<RingCtx>, relations: Vec<Polynomial>) -> Result<Arc<QuotientRing>, RingError> {
        for r in &relations {
            if !r.is_homogeneous() {
                return Err(RingError::NonHomogeneous(r.to_string()));
            }
        }
        let defining = Ideal::new(ctx, relations);
        let dim = krull_dim(&defining).ok_or(RingError::UnitIdeal)?;
        let monomial_basis = if dim == 0 {
            let mut basis = Vec::new();
            let mut d = 0u32;
            loop {
                let piece = standard_monomials(&defining, d);
                if piece.is_empty() {
                    break;
                }
                basis.extend(piece);
                d += 1;
            }
            Some(basis)
        } else {
            None
        };
        Ok(Arc::new(QuotientRing {
            ctx: ctx.clone(),
            defining,
            dim,
            monomial_basis,
            piece_cache: Mutex::new(HashMap::new()),
        }))
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_artinian(&self) -> bool {
        self.dim == 0
    }

    /// Monomial basis of an Artinian quotient, ordered by degree then
    /// descending monomial order.
    pub fn monomial_basis(&self) -> Option<&[Monomial]> {
        self.monomial_basis.as_deref()
    }

    /// k-dimension of an Artinian quotient.
    pub fn length(&self) -> Option<usize> {
        self.monomial_basis.as_ref().map(|b| b.len())
    }

    /// Standard monomials of degree d (the k-basis of the graded piece R_d).
    pub fn graded_piece(&self, d: u32) -> Arc<Vec<Monomial>> {
        let mut cache = self.piece_cache.lock().unwrap();
        cache
            .entry(d)
            .or_insert_with(|| Arc::new(standard_monomials(&self.defining, d)))
            .clone()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.defining.normal_form(p)
    }

    pub fn multiplicity(&self, up_to: u32) -> Result<u64, HilbertError> {
        Ok(hilbert_data(&self.defining, up_to)?.multiplicity)
    }

    /// The quotient of this ring by further (homogeneous lifts of) elements.
    pub fn mod_out(
        self: &Arc<QuotientRing>,
        extra: &[Polynomial],
    ) -> Result<Arc<QuotientRing>, RingError> {
        let mut relations = self.defining.generators().to_vec();
        relations.extend(extra.iter().cloned());
        QuotientRing::new(&self.ctx, relations)
    }

    /// Image of an ideal of R as the polynomial ideal containing I.
    pub fn push_ideal(&self, gens: &[Polynomial]) -> Ideal {
        self.defining.plus(gens)
    }
}

/// An element of a quotient ring, stored as its unique normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    rep: Polynomial,
    ring: Arc<QuotientRing>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.rep == other.rep
    }
}

impl Eq for RingElement {}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl RingElement {
    pub fn new(ring: &Arc<QuotientRing>, p: &Polynomial) -> RingElement {
        assert_eq!(p.ctx(), ring.ctx(), "element from a different ring context");
        RingElement { rep: ring.normal_form(p), ring: ring.clone() }
    }

    pub fn parse(ring: &Arc<QuotientRing>, text: &str) -> Result<RingElement, ParseError> {
        Ok(RingElement::new(ring, &parse_polynomial(text, ring.ctx())?))
    }

    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Image in the residue field k = R/m: the constant coefficient.
    pub fn residue(&self) -> Scalar {
        self.rep.constant_coeff()
    }

    /// Units of the graded local ring are the elements with nonzero residue.
    pub fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    fn same_ring(&self, other: &RingElement) {
        assert!(*self.ring == *other.ring, "elements of different rings");
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        RingElement::new(&self.ring, &self.rep.add(&other.rep))
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        RingElement::new(&self.ring, &self.rep.sub(&other.rep))
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        RingElement::new(&self.ring, &self.rep.mul(&other.rep))
    }

    pub fn neg(&self) -> RingElement {
        RingElement { rep: self.rep.neg(), ring: self.ring.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> RingElement {
        RingElement { rep: self.ring.normal_form(&self.rep.scale(c)), ring: self.ring.clone() }
    }
}

/// The two verified colon equalities behind an exact zerodivisor pair.
#[derive(Debug, Clone)]
pub struct EzdChecks {
    /// reduced basis of (I : x), which equals the pushforward of (y)
    pub ann_x: Vec<String>,
    /// reduced basis of (I : y), which equals the pushforward of (x)
    pub ann_y: Vec<String>,
}

/// A verified pair {x, y} with (0:x) = (y) and (0:y) = (x) in R.
#[derive(Debug, Clone)]
pub struct EzdPair {
    x: RingElement,
    y: RingElement,
    checks: EzdChecks,
}

impl EzdPair {
    pub fn x(&self) -> &RingElement {
        &self.x
    }

    pub fn y(&self) -> &RingElement {
        &self.y
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.x.ring()
    }

    pub fn checks(&self) -> &EzdChecks {
        &self.checks
    }

    /// The quotient R/(x,y) that the generator-count invariant lives over.
    pub fn coset_ring(&self) -> Result<Arc<QuotientRing>, RingError> {
        self.ring().mod_out(&[self.x.rep().clone(), self.y.rep().clone()])
    }
}

fn ideal_gens_string(i: &Ideal) -> String {
    let gens: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
    gens.join(", ")
}

/// Verifies both colon equalities and returns the certified pair; the check
/// is symmetric in (x, y). Zero elements and units are rejected up front.
pub fn is_exact_zerodivisor_pair(
    ring: &Arc<QuotientRing>,
    x: &RingElement,
    y: &RingElement,
) -> Result<EzdPair, RingError> {
    assert!(**x.ring() == **ring && **y.ring() == **ring, "elements of a different ring");
    for e in [x, y] {
        if e.is_zero() {
            return Err(RingError::ZeroElement);
        }
        if e.is_unit() {
            return Err(RingError::UnitElement(e.to_string()));
        }
    }
    let defining = ring.defining_ideal();
    let ann_x = defining.colon(x.rep()).expect("nonzero element");
    let want_y = ring.push_ideal(&[y.rep().clone()]);
    if !ann_x.equal(&want_y) {
        return Err(RingError::NotExactPair {
            failing: format!("(0:{})", x),
            computed: ideal_gens_string(&ann_x),
            expected: ideal_gens_string(&want_y),
        });
    }
    let ann_y = defining.colon(y.rep()).expect("nonzero element");
    let want_x = ring.push_ideal(&[x.rep().clone()]);
    if !ann_y.equal(&want_x) {
        return Err(RingError::NotExactPair {
            failing: format!("(0:{})", y),
            computed: ideal_gens_string(&ann_y),
            expected: ideal_gens_string(&want_x),
        });
    }
    let product = x.mul(y);
    assert!(product.is_zero(), "verified pair must multiply to zero");
    Ok(EzdPair {
        x: x.clone(),
        y: y.clone(),
        checks: EzdChecks {
            ann_x: ann_x.groebner_basis().iter().map(|g| g.to_string()).collect(),
            ann_y: ann_y.groebner_basis().iter().map(|g| g.to_string()).collect(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GregVerdict {
    CertifiedRegular,
    CertifiedHilbertCriterion,
    Assumed,
    Unknown,
}

impl fmt::Display for GregVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GregVerdict::CertifiedRegular => "CertifiedRegular",
            GregVerdict::CertifiedHilbertCriterion => "CertifiedHilbertCriterion",
            GregVerdict::Assumed => "Assumed",
            GregVerdict::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

/// Certificate that every totally reflexive module over the ring is free,
/// with the inspected evidence. `Assumed` carries a caller-supplied
/// justification and taints every downstream certificate that consumes it.
#[derive(Debug, Clone)]
pub struct GRegularityCertificate {
    pub verdict: GregVerdict,
    pub evidence: String,
}

impl GRegularityCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, GregVerdict::CertifiedRegular | GregVerdict::CertifiedHilbertCriterion)
    }
}

/// Decides G-regularity from the checkable criteria: linear defining ideal
/// (the ring is a polynomial ring, hence regular), or the cube of the
/// maximal ideal vanishing with Hilbert series different from 1+et+(e−1)t².
/// Falls back to the caller's assumption note, else Unknown.
pub fn g_regularity_certificate(
    ring: &Arc<QuotientRing>,
    assumption: Option<&str>,
) -> Result<GRegularityCertificate, RingError> {
    let (_, gens) = minimal_generators(ring.defining_ideal())?;
    if gens.is_empty() {
        return Ok(GRegularityCertificate {
            verdict: GregVerdict::CertifiedRegular,
            evidence: "no relations: polynomial ring, regular".to_string(),
        });
    }
    if gens.iter().all(|g| g.degree() == Some(1)) {
        return Ok(GRegularityCertificate {
            verdict: GregVerdict::CertifiedRegular,
            evidence: "defining ideal minimally generated by linear forms: regular".to_string(),
        });
    }
    if ring.is_artinian() {
        let h = hilbert_data(ring.defining_ideal(), 4)?;
        let val = |d: usize| h.values.get(d).map(|&(_, v)| v).unwrap_or(0);
        let (h1, h2, h3) = (val(1), val(2), val(3));
        if h3 == 0 {
            // m^3 = 0; series is 1 + h1 t + h2 t^2, embedding dimension h1
            if h2 != h1.saturating_sub(1) || h1 == 0 {
                return Ok(GRegularityCertificate {
                    verdict: GregVerdict::CertifiedHilbertCriterion,
                    evidence: format!(
                        "m^3 = 0 and series 1 + {h1}t + {h2}t^2 differs from 1 + {h1}t + {}t^2",
                        h1.saturating_sub(1)
                    ),
                });
            }
        }
    }
    if let Some(note) = assumption {
        return Ok(GRegularityCertificate {
            verdict: GregVerdict::Assumed,
            evidence: format!("assumed by caller: {note}"),
        });
    }
    Ok(GRegularityCertificate {
        verdict: GregVerdict::Unknown,
        evidence: "no applicable criterion".to_string(),
    })
}
