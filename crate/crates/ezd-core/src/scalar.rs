//! Exact field scalars: arbitrary-precision rationals and prime fields 𝔽_p.
//!
//! Every scalar carries its field tag so that cross-field arithmetic is a
//! programming error we can detect instead of a silent wrong answer.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// The coefficient field of a polynomial ring: ℚ or 𝔽_p with p a prime < 2³¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u32),
}

impl FieldKind {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
        }
    }

    /// Panics if `p` is not prime or does not fit the supported range.
    pub fn prime(p: u32) -> FieldKind {
        assert!(is_prime(p), "{p} is not a prime");
        assert!(p < (1 << 31), "prime modulus must be < 2^31");
        FieldKind::Prime(p)
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    let n = n as u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (maintained by `BigRational`); 𝔽_p values are reduced to [0,p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn zero(field: FieldKind) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: FieldKind) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: FieldKind, n: i64) -> Scalar {
        match field {
            FieldKind::Rational => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldKind::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u32;
                Scalar::Prime { p, value: m }
            }
        }
    }

    pub fn from_bigint(field: FieldKind, n: &BigInt) -> Scalar {
        match field {
            FieldKind::Rational => Scalar::Rational(BigRational::from(n.clone())),
            FieldKind::Prime(p) => {
                let m = n.mod_floor_u32(p);
                Scalar::Prime { p, value: m }
            }
        }
    }

    /// A literal a/b. In 𝔽_p this is a·b⁻¹; a denominator divisible by p is a
    /// characteristic-inconsistent literal and is rejected, never truncated.
    pub fn from_ratio(field: FieldKind, num: &BigInt, den: &BigInt) -> Result<Scalar, String> {
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        match field {
            FieldKind::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldKind::Prime(p) => {
                let d = den.mod_floor_u32(p);
                if d == 0 {
                    return Err(format!("denominator {den} is divisible by the characteristic {p}"));
                }
                let n = num.mod_floor_u32(p);
                let inv = mod_inverse(d, p);
                Ok(Scalar::Prime { p, value: mulmod(n, inv, p) })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalar arithmetic across different fields");
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { p: *p, value: ((*a as u64 + *b as u64) % *p as u64) as u32 }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, value } => {
                Scalar::Prime { p: *p, value: if *value == 0 { 0 } else { p - value } }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { p: *p, value: mulmod(*a, *b, *p) }
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { p, value } => Scalar::Prime { p: *p, value: mod_inverse(*value, *p) },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    assert!(a != 0, "inverse of zero in F{p}");
    // Fermat: a^(p-2) mod p
    let mut base = a as u64;
    let mut exp = (p - 2) as u64;
    let m = p as u64;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u32
}

trait ModFloor {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloor for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        use num::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        // m is in [0, p)
        let (_, digits) = m.to_u32_digits();
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }
}

/// Signed helper used by the pretty-printer: true when the rational is negative.
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Prime { .. } => false,
    }
}
