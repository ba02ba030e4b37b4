//! Exact scalars: elements of ℚ(p₁,…,pₘ) kept in a canonical reduced form.

mod expr;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use expr::{parse_scalar_expr, ExprError, ExprErrorKind, ScalarExpr};
pub use poly::{gcd, int, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the given assignment")]
    DenominatorVanishes,
    #[error("parameter `{0}` has no assigned value")]
    Unassigned(String),
}

/// A rational function `numer / denom`.
///
/// Invariants: `denom` is nonzero with leading coefficient 1 under graded
/// lexicographic order, and `gcd(numer, denom) = 1`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    numer: Polynomial,
    denom: Polynomial,
}

/// Operation codes accepted by [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Dispatching front end over the field operations. Binary codes require `b`.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, ScalarError> {
    let rhs = || b.expect("binary scalar operation needs a second operand");
    Ok(match op {
        ArithOp::Add => a + rhs(),
        ArithOp::Sub => a - rhs(),
        ArithOp::Mul => a * rhs(),
        ArithOp::Div => a.checked_div(rhs())?,
        ArithOp::Neg => -a,
        ArithOp::Inv => a.inv()?,
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { numer: Polynomial::zero(), denom: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { numer: Polynomial::constant(r), denom: Polynomial::one() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Scalar { numer: p, denom: Polynomial::one() }
    }

    /// The parameter with index `i`.
    pub fn param(i: usize) -> Self {
        Self::from_polynomial(Polynomial::var(i))
    }

    /// Build `numer / denom` and bring it to normal form.
    pub fn from_fraction(numer: Polynomial, denom: Polynomial) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(numer, denom))
    }

    fn normalized(numer: Polynomial, denom: Polynomial) -> Self {
        if numer.is_zero() {
            return Self::zero();
        }
        if let Some(d) = denom.constant_value() {
            return Scalar { numer: numer.scale(&d.recip()), denom: Polynomial::one() };
        }
        let g = gcd(&numer, &denom);
        let (n, d) = if g.is_one() {
            (numer, denom)
        } else {
            (
                numer.div_exact(&g).expect("gcd divides numerator"),
                denom.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = d.leading_coefficient();
        if lc.is_one() {
            Scalar { numer: n, denom: d }
        } else {
            let k = lc.recip();
            Scalar { numer: n.scale(&k), denom: d.scale(&k) }
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denom.is_one() && self.numer.is_one()
    }

    /// The value when this scalar involves no parameters.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.denom.is_one() {
            self.numer.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.denom.clone(), self.numer.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Scalar { numer: base.numer.pow(k), denom: base.denom.pow(k) })
    }

    pub fn scale_rational(&self, k: &Rational) -> Scalar {
        if k.is_zero() {
            return Self::zero();
        }
        Scalar { numer: self.numer.scale(k), denom: self.denom.clone() }
    }

    /// Substitute rational values for a subset of parameters.
    pub fn substitute(&self, values: &BTreeMap<usize, Rational>) -> Result<Scalar, ScalarError> {
        let d = self.denom.substitute(values);
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(Self::normalized(self.numer.substitute(values), d))
    }

    /// Full specialization to a rational number.
    pub fn evaluate_at(&self, values: &BTreeMap<usize, Rational>) -> Result<Rational, ScalarError> {
        let s = self.substitute(values)?;
        s.as_rational().ok_or_else(|| {
            let width = s.numer.width().max(s.denom.width());
            let missing = (0..width).find(|i| !values.contains_key(i)).unwrap_or(0);
            ScalarError::Unassigned(format!("p{missing}"))
        })
    }

    /// Highest parameter index in use, plus one.
    pub fn width(&self) -> usize {
        self.numer.width().max(self.denom.width())
    }

    /// Canonical text using the given parameter names.
    pub fn to_text(&self, names: &[String]) -> String {
        let num = self.numer.to_text(names);
        if self.denom.is_one() {
            return num;
        }
        let num = if self.numer.num_terms() > 1 { format!("({num})") } else { num };
        let den = self.denom.to_text(names);
        if self.denom.is_single_power() {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    /// Whether `to_text` is safe as the left factor of `*` without
    /// parentheses.
    pub fn is_simple_factor(&self) -> bool {
        self.denom.is_one() && self.numer.num_terms() <= 1
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, names }
    }
}

pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    names: &'a [String],
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.s.to_text(self.names))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denom.is_one() && rhs.denom.is_one() {
            return Scalar::from_polynomial(self.numer.add(&rhs.numer));
        }
        if self.denom == rhs.denom {
            return Scalar::normalized(self.numer.add(&rhs.numer), self.denom.clone());
        }
        let g = gcd(&self.denom, &rhs.denom);
        let a = self.denom.div_exact(&g).expect("gcd divides");
        let b = rhs.denom.div_exact(&g).expect("gcd divides");
        let numer = self.numer.mul(&b).add(&rhs.numer.mul(&a));
        Scalar::normalized(numer, a.mul(&rhs.denom))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.denom.is_one() && rhs.denom.is_one() {
            return Scalar::from_polynomial(self.numer.mul(&rhs.numer));
        }
        // Cross-cancel so the product is already reduced.
        let g1 = gcd(&self.numer, &rhs.denom);
        let g2 = gcd(&rhs.numer, &self.denom);
        let n1 = self.numer.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.denom.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.numer.div_exact(&g2).expect("gcd divides");
        let d1 = self.denom.div_exact(&g2).expect("gcd divides");
        let numer = n1.mul(&n2);
        let denom = d1.mul(&d2);
        let lc = denom.leading_coefficient();
        if lc.is_one() {
            Scalar { numer, denom }
        } else {
            let k = lc.recip();
            Scalar { numer: numer.scale(&k), denom: denom.scale(&k) }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { numer: self.numer.neg(), denom: self.denom.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["lambda".into(), "gamma".into()]
    }
    fn lam() -> Scalar {
        Scalar::param(0)
    }
    fn gam() -> Scalar {
        Scalar::param(1)
    }

    #[test]
    fn additive_inverse_is_zero() {
        let r = scalar_arith(ArithOp::Add, &lam(), Some(&-lam())).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn multiplicative_inverse_is_one() {
        let inv_g2 = gam().pow(-2).unwrap();
        let r = scalar_arith(ArithOp::Mul, &inv_g2, Some(&gam().pow(2).unwrap())).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn quotient_is_reduced_and_monic() {
        let l2 = lam().pow(2).unwrap();
        let g2 = gam().pow(2).unwrap();
        let q = scalar_arith(ArithOp::Div, &l2, Some(&g2)).unwrap();
        assert_eq!(q.to_text(&names()), "lambda^2/gamma^2");
        assert!(q.denom().leading_coefficient().is_one());
        // Independent expansion: q * gamma^2 must give back lambda^2.
        assert_eq!(&q * &g2, l2);
    }

    #[test]
    fn cancellation_to_polynomial() {
        let one = Scalar::one();
        let g = gam();
        let num = &g.pow(2).unwrap() - &one;
        let den = &g - &one;
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &g + &one);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(lam().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        let q = lam().pow(2).unwrap().checked_div(&gam().pow(2).unwrap()).unwrap();
        let at: BTreeMap<usize, Rational> = [(0, int(2)), (1, int(1))].into_iter().collect();
        assert_eq!(q.evaluate_at(&at).unwrap(), int(4));

        let inv = gam().inv().unwrap();
        let at0: BTreeMap<usize, Rational> = [(1, int(0))].into_iter().collect();
        assert_eq!(inv.evaluate_at(&at0), Err(ScalarError::DenominatorVanishes));

        // -8 gamma^2 at gamma = 3: -8 * 9 = -72.
        let s = Scalar::from_int(-8) * gam().pow(2).unwrap();
        let at3: BTreeMap<usize, Rational> = [(1, int(3))].into_iter().collect();
        assert_eq!(s.evaluate_at(&at3).unwrap(), int(-72));
    }

    #[test]
    fn denominator_made_monic() {
        // 1 / (2*gamma + 4) -> (1/2) / (gamma + 2)
        let d = &gam().scale_rational(&int(2)) + &Scalar::from_int(4);
        let s = d.inv().unwrap();
        assert_eq!(s.to_text(&names()), "1/2/(gamma + 2)");
    }
}
