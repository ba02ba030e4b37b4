//! Sparse multivariate polynomials over ℚ.
//!
//! Monomials are exponent vectors with trailing zeros trimmed, so a
//! polynomial does not need to know how many parameters its context
//! declares; variable `i` is the `i`-th declared parameter. Terms are kept
//! in a `BTreeMap` ordered by graded lexicographic order, so the last entry
//! is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Rational = BigRational;

/// Exponent vector. Variable `i` is raised to `exps[i]`; trailing zeros are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v: SmallVec<[u32; 4]> = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial(v).trimmed()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps)).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variable slots in use (highest variable index + 1).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().enumerate().all(|(i, &e)| e <= other.exp(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let v = (0..other.0.len()).map(|i| other.exp(i) - self.exp(i)).collect();
        Monomial(v).trimmed()
    }

    fn gcd_with(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial((0..n).map(|i| self.exp(i).min(other.exp(i))).collect()).trimmed()
    }

    fn without_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        if var < m.0.len() {
            m.0[var] = 0;
        }
        m.trimmed()
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable decides.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(index: usize) -> Self {
        Self::monomial(Rational::one(), Monomial::var(index, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Highest variable index in use, plus one.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, k: &Rational, mono: &Monomial) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. A single polynomial is a Gröbner basis of the ideal it
    /// generates, so the remainder vanishes exactly when `divisor` divides.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            let mut q = Polynomial::zero();
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                q.terms.insert(lm.quotient_of(m), c / lc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / lc;
            rem = rem.sub(&divisor.mul_monomial(&qc, &qm));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Substitute rational values for some variables.
    pub fn substitute(&self, values: &BTreeMap<usize, Rational>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps: SmallVec<[u32; 4]> = SmallVec::from_slice(m.exponents());
            for (&var, value) in values {
                if var < exps.len() && exps[var] > 0 {
                    coeff *= pow_rational(value, exps[var]);
                    exps[var] = 0;
                }
            }
            out.add_term(Monomial(exps).trimmed(), coeff);
        }
        out
    }

    /// Minimal monomial dividing every term.
    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd_with(m))
    }

    /// View as a univariate polynomial in `var`; entry `d` is the coefficient
    /// of `var^d` and does not involve `var`.
    fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize].add_term(m.without_var(var), c.clone());
        }
        coeffs
    }

    fn from_coefficients(var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (d, p) in coeffs.iter().enumerate() {
            if d == 0 {
                out = out.add(p);
            } else {
                out = out.add(&p.mul_monomial(&Rational::one(), &Monomial::var(var, d as u32)));
            }
        }
        out
    }

    /// Canonical text: terms in descending graded-lex order.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let term = term_text(c, m, names);
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }

    /// Whether `to_text` yields a single factor-level token sequence that can
    /// sit on the right of `/` without parentheses (a lone power of one
    /// variable).
    pub(crate) fn is_single_power(&self) -> bool {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 => {
                c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1
            }
            _ => false,
        }
    }
}

pub(crate) fn pow_rational(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

pub(crate) fn rational_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("p{i}"))
}

pub(crate) fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut s = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&var_name(names, i));
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

fn term_text(c: &Rational, m: &Monomial, names: &[String]) -> String {
    if m.is_one() {
        return rational_text(c);
    }
    let mono = monomial_text(m, names);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{}", rational_text(c), mono)
    }
}

/// Greatest common divisor, normalized to leading coefficient 1 (zero when
/// both inputs are zero).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // Divisors of a monomial are monomials.
        let m = a.monomial_content().gcd_with(&b.monomial_content());
        return Polynomial::monomial(Rational::one(), m);
    }
    if a == b {
        return a.monic();
    }
    let width = a.width().max(b.width());
    let var = (0..width)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");
    gcd_recursive(a, b, var).monic()
}

/// gcd in R[var] where R = ℚ[other variables], via content and primitive PRS.
fn gcd_recursive(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    let cont_a = content(&ca);
    let cont_b = content(&cb);
    let cont = gcd(&cont_a, &cont_b);
    let mut f = primitive(&ca, &cont_a);
    let mut g = primitive(&cb, &cont_b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !(g.len() == 1 && g[0].is_zero()) {
        if g.len() == 1 {
            // Nonzero constant in var: primitive parts are coprime.
            f = vec![Polynomial::one()];
            break;
        }
        let r = pseudo_remainder(&f, &g);
        f = g;
        if r.iter().all(Polynomial::is_zero) {
            g = vec![Polynomial::zero()];
        } else {
            let c = content(&r);
            g = primitive(&r, &c);
        }
    }
    Polynomial::from_coefficients(var, &f).mul(&cont)
}

fn content(coeffs: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive(coeffs: &[Polynomial], content: &Polynomial) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect();
    trim_coeffs(&mut out);
    integer_primitive(&mut out);
    out
}

/// Rescale by a rational unit so all coefficients are coprime integers.
/// Without this the PRS carries growing rational constants along.
fn integer_primitive(v: &mut [Polynomial]) {
    let coeffs = || v.iter().flat_map(|p| p.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>());
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
    if num.is_zero() {
        return;
    }
    let k = Rational::new(den, num);
    for p in v.iter_mut() {
        *p = p.scale(&k);
    }
}

fn trim_coeffs(v: &mut Vec<Polynomial>) {
    while v.len() > 1 && v.last().map(Polynomial::is_zero).unwrap_or(false) {
        v.pop();
    }
    if v.is_empty() {
        v.push(Polynomial::zero());
    }
}

/// prem(f, g) for coefficient vectors with deg f ≥ deg g ≥ 1.
fn pseudo_remainder(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let n = g.len() - 1;
    let lg = &g[n];
    let mut r: Vec<Polynomial> = f.to_vec();
    trim_coeffs(&mut r);
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - n;
        let mut next: Vec<Polynomial> = r.iter().map(|c| c.mul(lg)).collect();
        for (i, gc) in g.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&gc.mul(&lr));
        }
        next.pop();
        trim_coeffs(&mut next);
        r = next;
    }
    r
}

/// Integer helper used by tests and the parser.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(int(n))
    }

    #[test]
    fn grlex_orders_by_degree_then_first_variable() {
        let x2 = Monomial::var(0, 2);
        let xy = Monomial::from_exponents(&[1, 1]);
        let y2 = Monomial::var(1, 2);
        let x = Monomial::var(0, 1);
        assert!(x2 > xy && xy > y2 && y2 > x && x > Monomial::one());
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        // (x^2 - 1, x - 1) -> x - 1
        let a = x().mul(&x()).sub(&c(1));
        let b = x().sub(&c(1));
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let f = x().add(&y()); // x + y
        let a = f.mul(&x().sub(&c(2)));
        let b = f.mul(&y().add(&c(3))).scale(&int(5));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x().mul(&y()).add(&c(1));
        let b = x().add(&y());
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_with_monomial_fast_path() {
        let a = Polynomial::monomial(int(3), Monomial::from_exponents(&[2, 1]));
        let b = x().mul(&x()).mul(&y()).add(&x());
        assert_eq!(gcd(&a, &b), x());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = x().mul(&x()).sub(&y().mul(&y()));
        let q = a.div_exact(&x().sub(&y())).unwrap();
        assert_eq!(q, x().add(&y()));
        assert!(a.div_exact(&x().add(&c(1))).is_none());
    }

    #[test]
    fn text_uses_descending_grlex() {
        let names = vec!["lambda".to_string(), "gamma".to_string()];
        let p = y().mul(&y()).scale(&int(2)).sub(&x()).add(&c(1));
        assert_eq!(p.to_text(&names), "2*gamma^2 - lambda + 1");
    }
}
