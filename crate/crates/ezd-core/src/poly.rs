//! Multivariate polynomials over an exact field, in canonical sorted-term form.

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{is_negative, FieldKind, Scalar};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// The ambient polynomial ring: field, named variables, and the monomial
/// order used to sort terms. Shared by reference between all values built
/// over it; two contexts are interchangeable only when structurally equal.
#[derive(Debug, PartialEq, Eq)]
pub struct RingCtx {
    field: FieldKind,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl RingCtx {
    pub fn new(field: FieldKind, vars: Vec<String>, order: MonomialOrder) -> Arc<RingCtx> {
        assert!(vars.len() <= 32, "at most 32 variables supported");
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate variable name {v}");
        }
        Arc::new(RingCtx { field, vars, order })
    }

    pub fn grevlex(field: FieldKind, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// The same ring with a different term order (used for elimination).
    pub fn with_order(&self, order: MonomialOrder) -> Arc<RingCtx> {
        RingCtx::new(self.field, self.vars.clone(), order)
    }

    /// Extends the ring by one fresh auxiliary variable, returned together
    /// with its index. The name is chosen to avoid clashes.
    pub fn with_aux_var(&self) -> (Arc<RingCtx>, usize) {
        let mut name = "t".to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        let idx = vars.len() - 1;
        (RingCtx::new(self.field, vars, self.order), idx)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("mixed ring contexts: {0} vs {1}")]
    MixedContexts(String, String),
}

/// A polynomial in canonical form: terms strictly descending in the context's
/// monomial order, no zero coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<RingCtx>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingCtx>) -> Polynomial {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Polynomial {
        Polynomial::constant(ctx, Scalar::one(ctx.field()))
    }

    pub fn constant(ctx: &Arc<RingCtx>, c: Scalar) -> Polynomial {
        assert_eq!(c.field(), ctx.field());
        if c.is_zero() {
            Polynomial::zero(ctx)
        } else {
            Polynomial { ctx: ctx.clone(), terms: vec![(Monomial::one(ctx.nvars()), c)] }
        }
    }

    pub fn var(ctx: &Arc<RingCtx>, index: usize) -> Polynomial {
        Polynomial::term(ctx, Monomial::var(ctx.nvars(), index, 1), Scalar::one(ctx.field()))
    }

    pub fn term(ctx: &Arc<RingCtx>, m: Monomial, c: Scalar) -> Polynomial {
        assert_eq!(m.nvars(), ctx.nvars());
        if c.is_zero() {
            Polynomial::zero(ctx)
        } else {
            Polynomial { ctx: ctx.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds the canonical form from arbitrary (monomial, coefficient) pairs:
    /// merges duplicates, drops zeros, sorts descending.
    pub fn from_terms(ctx: &Arc<RingCtx>, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let mut map: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.nvars());
            assert_eq!(c.field(), ctx.field());
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| ctx.cmp_monomials(b, a));
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    /// The coefficient of the constant monomial.
    pub fn constant_coeff(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Scalar::zero(self.ctx.field()))
    }

    pub fn coeff_of(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Scalar::zero(self.ctx.field()))
    }

    fn same_ctx(&self, other: &Polynomial) -> Result<(), ArithError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(ArithError::MixedContexts(
                format!("{:?} vars {:?}", self.ctx.field(), self.ctx.vars()),
                format!("{:?} vars {:?}", other.ctx.field(), other.ctx.vars()),
            ))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.same_ctx(other)?;
        Ok(merge(self, other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.same_ctx(other)?;
        Ok(merge(self, other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.same_ctx(other)?;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| self.ctx.cmp_monomials(b, a));
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("context mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.checked_sub(other).expect("context mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("context mismatch")
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    /// Multiplies by the single term c·m. Keeps the sorted invariant without
    /// resorting (term multiplication is order-preserving).
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.mul(c))).collect(),
        }
    }

    /// Leading coefficient scaled to 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Substitutes a polynomial for one variable (used by test oracles).
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            let mut t = Polynomial::term(&self.ctx, Monomial::new(exps), c.clone());
            for _ in 0..e {
                t = t.mul(value);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-sorts the terms into another context that differs only in order,
    /// or extends/projects the exponent vectors between a ring and the same
    /// ring with extra trailing variables (which must not occur).
    pub fn map_to(&self, target: &Arc<RingCtx>) -> Polynomial {
        assert_eq!(self.ctx.field(), target.field());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                if exps.len() < n {
                    exps.resize(n, 0);
                } else if exps.len() > n {
                    assert!(
                        exps[n..].iter().all(|&e| e == 0),
                        "polynomial uses variables outside the target ring"
                    );
                    exps.truncate(n);
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

fn merge(a: &Polynomial, b: &Polynomial, subtract: bool) -> Polynomial {
    let ctx = a.ctx.clone();
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ctx.cmp_monomials(ma, mb) {
            Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((mb.clone(), if subtract { cb.neg() } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if subtract { ca.sub(cb) } else { ca.add(cb) };
                if !c.is_zero() {
                    out.push((ma.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), if subtract { c.neg() } else { c.clone() })));
    Polynomial { ctx, terms: out }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if is_negative(c) { ("-", c.neg()) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            write_term(f, m, &mag, self.ctx.vars())?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Scalar, vars: &[String]) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{c}");
    }
    let mut lead = String::new();
    if !c.is_one() {
        lead = format!("{c}*");
    }
    write!(f, "{lead}")?;
    let mut first = true;
    for (i, name) in vars.iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<RingCtx> {
        RingCtx::grevlex(FieldKind::Rational, &["x", "y", "z"])
    }

    #[test]
    fn product_of_sum_and_difference() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn freshman_dream_in_characteristic_two() {
        let c = RingCtx::grevlex(FieldKind::prime(2), &["x", "y"]);
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq, x.mul(&x).add(&y.mul(&y)));
    }

    #[test]
    fn multiplication_by_zero() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        assert!(x.mul(&Polynomial::zero(&c)).is_zero());
    }

    #[test]
    fn mixed_contexts_error() {
        let a = Polynomial::var(&ctx(), 0);
        let c2 = RingCtx::grevlex(FieldKind::Rational, &["u", "v", "w"]);
        let b = Polynomial::var(&c2, 0);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn display_examples() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let z = Polynomial::var(&c, 2);
        let p = x.mul(&x).sub(&y.mul(&z));
        assert_eq!(p.to_string(), "x^2 - y*z");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
        let q = y.scale(&Scalar::from_integer(FieldKind::Rational, -3));
        assert_eq!(q.to_string(), "-3*y");
    }

    #[test]
    fn substitution() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        // y - x^2 under y := x^2 vanishes
        let p = y.sub(&x.mul(&x));
        assert!(p.substitute(1, &x.mul(&x)).is_zero());
    }
}
