//! Exact computational commutative algebra over graded quotient rings:
//! polynomial arithmetic, Gröbner bases with reduction certificates, exact
//! zerodivisor pairs, finitely presented modules with period-2 resolutions,
//! Fitting-ideal certificates, and generators for families of indecomposable
//! totally reflexive modules of strictly growing multiplicity.

pub mod scalar;
pub mod monomial;
pub mod poly;
pub mod parser;
pub mod linalg;
pub mod groebner;
pub mod hilbert;
pub mod ring;
pub mod rmatrix;
pub mod fp_module;
pub mod resolution;
pub mod endo;
pub mod extension;
pub mod invariant;
pub mod family;
pub mod report;

pub use fp_module::{FPModule, Window};
pub use groebner::{Ideal, MembershipCertificate};
pub use monomial::{Monomial, MonomialOrder};
pub use parser::parse_polynomial;
pub use poly::{Polynomial, RingCtx};
pub use ring::{EzdPair, QuotientRing, RingElement};
pub use rmatrix::RMatrix;
pub use scalar::{FieldKind, Scalar};
