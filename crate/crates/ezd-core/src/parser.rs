//! Text parser for polynomial expressions.
//!
//! Grammar (whitespace insensitive):
//!   expr   := ['-'] term (('+'|'-') term)*
//!   term   := factor ('*'? factor)*
//!   factor := literal | var ('^' nat)? | '(' expr ')' ('^' nat)?
//!   literal := int ('/' int)?
//!
//! Implicit multiplication by juxtaposition is accepted (`2x^2y`), printing
//! always emits explicit `*`, and parse(print(f)) == f.

use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingCtx};
use crate::scalar::Scalar;
use num::bigint::BigInt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown variable `{name}` at column {col}")]
    UnknownVariable { name: String, col: usize },
    #[error("malformed syntax at column {col}: {msg}")]
    Malformed { col: usize, msg: String },
    #[error("exponent at column {col} is not a nonnegative integer")]
    BadExponent { col: usize },
    #[error("characteristic-inconsistent literal at column {col}: {msg}")]
    BadLiteral { col: usize, msg: String },
}

impl ParseError {
    /// Column (1-based) where the error was detected.
    pub fn column(&self) -> usize {
        match self {
            ParseError::UnknownVariable { col, .. }
            | ParseError::Malformed { col, .. }
            | ParseError::BadExponent { col }
            | ParseError::BadLiteral { col, .. } => *col,
        }
    }
}

pub fn parse_polynomial(text: &str, ctx: &Arc<RingCtx>) -> Result<Polynomial, ParseError> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, ctx: ctx.clone() };
    p.skip_ws();
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    ctx: Arc<RingCtx>,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map(|(i, _)| i + 1).unwrap_or(self.chars.len() + 1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::Malformed { col: self.col(), msg: msg.to_string() }
    }

    fn parse_expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        self.skip_ws();
        if self.peek() == Some('-') {
            self.bump();
            negate = true;
        } else if self.peek() == Some('+') {
            self.bump();
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                // implicit multiplication: a factor can start right away
                Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_' => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                self.parse_optional_power(inner)
            }
            Some(c) if c.is_ascii_digit() => self.parse_literal(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let col = self.col();
                let name = self.parse_ident();
                let idx = self
                    .ctx
                    .var_index(&name)
                    .ok_or(ParseError::UnknownVariable { name, col })?;
                let var = Polynomial::var(&self.ctx, idx);
                self.parse_optional_power_monomial(idx, var)
            }
            _ => Err(self.err("expected a coefficient, variable or `(`")),
        }
    }

    fn parse_optional_power_monomial(
        &mut self,
        idx: usize,
        var: Polynomial,
    ) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.parse_nat()?;
            let m = Monomial::var(self.ctx.nvars(), idx, e);
            Ok(Polynomial::term(&self.ctx, m, Scalar::one(self.ctx.field())))
        } else {
            Ok(var)
        }
    }

    fn parse_optional_power(&mut self, base: Polynomial) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            let e = self.parse_nat()?;
            let mut acc = Polynomial::one(base.ctx());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn parse_nat(&mut self) -> Result<u16, ParseError> {
        self.skip_ws();
        let col = self.col();
        if self.peek() == Some('-') {
            return Err(ParseError::BadExponent { col });
        }
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(ParseError::BadExponent { col });
        }
        digits.parse::<u16>().map_err(|_| ParseError::BadExponent { col })
    }

    fn parse_ident(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            s.push(self.bump().unwrap());
        }
        s
    }

    fn parse_literal(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        let num: BigInt = digits.parse().map_err(|_| self.err("bad integer literal"))?;
        // a '/' directly after an integer is a rational literal, not division
        self.skip_ws();
        let scalar = if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let dcol = self.col();
            let mut den = String::new();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                den.push(self.bump().unwrap());
            }
            if den.is_empty() {
                return Err(ParseError::Malformed { col: dcol, msg: "expected denominator".into() });
            }
            let den: BigInt = den.parse().map_err(|_| self.err("bad denominator"))?;
            Scalar::from_ratio(self.ctx.field(), &num, &den)
                .map_err(|msg| ParseError::BadLiteral { col, msg })?
        } else {
            Scalar::from_bigint(self.ctx.field(), &num)
        };
        Ok(Polynomial::constant(&self.ctx, scalar))
    }
}
