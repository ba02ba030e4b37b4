//! Scalar expression syntax.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | atom ('^' integer)?
//! atom     := rational | identifier | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! A `/` directly between two integer literals belongs to the literal, so
//! `x/2/3` reads as `x / (2/3)`. Negative exponents are lowered to a
//! division at parse time.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{is_negative, rational_text, Rational};
use super::{Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarExpr {
    Lit(Rational),
    Ident(String),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    Eval(ScalarError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ExprError {
    pub offset: usize,
    pub kind: ExprErrorKind,
}

impl fmt::Display for ExprErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ExprErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ExprErrorKind::Eval(e) => write!(f, "{e}"),
        }
    }
}

/// Parse `text`, accepting only identifiers listed in `names`.
pub fn parse_scalar_expr(text: &str, names: &[String]) -> Result<ScalarExpr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ExprError {
        ExprError { offset: self.pos, kind: ExprErrorKind::Syntax(msg.to_string()) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ScalarExpr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                ScalarExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ScalarExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ScalarExpr, ExprError> {
        let mut lhs = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if c == b'*' {
                ScalarExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ScalarExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ScalarExpr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(ScalarExpr::Neg(Box::new(inner)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected integer exponent"));
            }
            let k: u32 = digits.parse().map_err(|_| ExprError {
                offset: start,
                kind: ExprErrorKind::Syntax("exponent out of range".into()),
            })?;
            let pow = ScalarExpr::Pow(Box::new(base), k);
            return Ok(if negative {
                ScalarExpr::Div(Box::new(ScalarExpr::Lit(Rational::one())), Box::new(pow))
            } else {
                pow
            });
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ScalarExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digit string");
                // integer '/' positive-integer forms a single literal
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        let at = self.pos;
                        let d: BigInt = self.digits().parse().expect("digit string");
                        if d.is_zero() {
                            return Err(ExprError {
                                offset: at,
                                kind: ExprErrorKind::Syntax("zero denominator in literal".into()),
                            });
                        }
                        return Ok(ScalarExpr::Lit(Rational::new(n, d)));
                    }
                }
                self.pos = save;
                Ok(ScalarExpr::Lit(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if !self.names.iter().any(|n| *n == name) {
                    return Err(ExprError { offset: start, kind: ExprErrorKind::UnknownIdentifier(name) });
                }
                Ok(ScalarExpr::Ident(name))
            }
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl ScalarExpr {
    /// Evaluate with identifiers resolved against `params` (identifier at
    /// position `i` is parameter `i`).
    pub fn eval(&self, params: &[String]) -> Result<Scalar, ScalarError> {
        Ok(match self {
            ScalarExpr::Lit(r) => Scalar::from_rational(r.clone()),
            ScalarExpr::Ident(name) => {
                let i = params
                    .iter()
                    .position(|p| p == name)
                    .ok_or_else(|| ScalarError::Unassigned(name.clone()))?;
                Scalar::param(i)
            }
            ScalarExpr::Neg(e) => -e.eval(params)?,
            ScalarExpr::Add(a, b) => a.eval(params)? + b.eval(params)?,
            ScalarExpr::Sub(a, b) => a.eval(params)? - b.eval(params)?,
            ScalarExpr::Mul(a, b) => a.eval(params)? * b.eval(params)?,
            ScalarExpr::Div(a, b) => a.eval(params)?.checked_div(&b.eval(params)?)?,
            ScalarExpr::Pow(a, k) => a.eval(params)?.pow(*k as i64)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ScalarExpr::Add(..) | ScalarExpr::Sub(..) => 1,
            ScalarExpr::Mul(..) | ScalarExpr::Div(..) => 2,
            ScalarExpr::Neg(..) => 3,
            ScalarExpr::Pow(..) => 4,
            ScalarExpr::Lit(r) if !r.is_integer() => 4,
            ScalarExpr::Lit(_) | ScalarExpr::Ident(_) => 5,
        }
    }

    fn starts_with_digit(&self) -> bool {
        match self {
            ScalarExpr::Lit(_) => true,
            ScalarExpr::Add(a, _)
            | ScalarExpr::Sub(a, _)
            | ScalarExpr::Mul(a, _)
            | ScalarExpr::Div(a, _)
            | ScalarExpr::Pow(a, _) => a.starts_with_digit() && a.precedence() >= self.precedence(),
            _ => false,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            ScalarExpr::Lit(r) => {
                debug_assert!(!is_negative(r), "literals are non-negative");
                f.write_str(&rational_text(r))
            }
            ScalarExpr::Ident(n) => f.write_str(n),
            ScalarExpr::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)
            }
            ScalarExpr::Add(a, b) | ScalarExpr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, ScalarExpr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            ScalarExpr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            ScalarExpr::Div(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("/")?;
                // `2/3` would re-read as one literal
                if b.starts_with_digit() {
                    f.write_str("(")?;
                    b.write_at(f, 0)?;
                    f.write_str(")")
                } else {
                    b.write_at(f, 3)
                }
            }
            ScalarExpr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
