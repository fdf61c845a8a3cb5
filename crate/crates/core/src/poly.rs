//! The commutative polynomial ring S = k[x, y] and linear forms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// A polynomial in x and y, keyed by exponent pairs `(i, j)` for `x^i y^j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CommPoly {
    terms: LinComb<(u32, u32)>,
}

/// The form `a·x + b·y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm {
    pub a: Rational,
    pub b: Rational,
}

pub(crate) fn add_exp(a: u32, b: u32) -> u32 {
    a.checked_add(b).expect("monomial exponent overflow")
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        CommPoly { terms: LinComb::single((i, j), c) }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn from_terms(terms: LinComb<(u32, u32)>) -> Self {
        CommPoly { terms }
    }

    pub fn terms(&self) -> &LinComb<(u32, u32)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.coeff(&(i, j))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        self.terms.add_term((i, j), c);
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// The component S_p.
    pub fn homogeneous_component(&self, p: u32) -> CommPoly {
        let mut out = self.clone();
        out.terms.retain(|(i, j)| i + j == p);
        out
    }

    pub fn scale(&self, c: &Rational) -> CommPoly {
        CommPoly { terms: self.terms.scaled(c) }
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> CommPoly {
        CommPoly { terms: self.terms.map_keys(|&(a, b)| (add_exp(a, i), add_exp(b, j))) }
    }

    pub fn pow(&self, e: u32) -> CommPoly {
        let mut acc = CommPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_x(&self) -> CommPoly {
        let mut out = CommPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Rational::from(i));
            }
        }
        out
    }

    pub fn partial_y(&self) -> CommPoly {
        let mut out = CommPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Rational::from(j));
            }
        }
        out
    }

    /// Substitute `x -> px`, `y -> py`.
    pub fn substitute(&self, px: &CommPoly, py: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = &px.pow(i) * &py.pow(j);
            out = &out + &t.scale(c);
        }
        out
    }

    /// The quotient `q` with `q·α = self`.
    pub fn divide_exact(&self, alpha: &LinearForm) -> Result<CommPoly> {
        let not_div = || Error::NotDivisible(self.to_string(), alpha.to_string());
        if alpha.is_zero() {
            return Err(not_div());
        }
        if alpha.b.is_zero() {
            let mut out = CommPoly::zero();
            for (&(i, j), c) in &self.terms {
                if i == 0 {
                    return Err(not_div());
                }
                out.add_term(i - 1, j, c / &alpha.a);
            }
            return Ok(out);
        }
        let alpha_poly = alpha.to_poly();
        let mut rem = self.clone();
        let mut q = CommPoly::zero();
        loop {
            let lead = rem.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).max_by_key(|(k, _)| *k);
            let Some(((j, i), c)) = lead else { break };
            if j == 0 {
                return Err(not_div());
            }
            let t = CommPoly::monomial(i, j - 1, &c / &alpha.b);
            rem = &rem - &(&t * &alpha_poly);
            q = &q + &t;
        }
        Ok(q)
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().map(|(&(i, j), c)| c * x.pow(i) * y.pow(j)).sum()
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut t = self.terms.clone();
        t.add_assign(&rhs.terms);
        CommPoly { terms: t }
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut t = self.terms.clone();
        t.sub_assign(&rhs.terms);
        CommPoly { terms: t }
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = LinComb::new();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term((add_exp(a, i), add_exp(b, j)), c * d);
            }
        }
        CommPoly { terms: out }
    }
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &Rational, factors: &[(&str, u32)]) -> fmt::Result {
    let factors: Vec<String> =
        factors.iter().filter(|(_, e)| *e > 0).map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
    if factors.is_empty() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{}", factors.join("*"))
    } else if *c == -Rational::one() {
        write!(f, "-{}", factors.join("*"))
    } else {
        write!(f, "{c}*{}", factors.join("*"))
    }
}

pub(crate) fn fmt_sum<I>(f: &mut fmt::Formatter<'_>, items: I) -> fmt::Result
where
    I: Iterator<Item = String>,
{
    let mut first = true;
    for s in items {
        if first {
            write!(f, "{s}")?;
            first = false;
        } else if let Some(rest) = s.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {s}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

struct Mono<'a>(&'a Rational, [(&'static str, u32); 2]);

impl fmt::Display for Mono<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_monomial(f, self.0, &self.1)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let (ka, kb) = (a.0, b.0);
            (kb.0 + kb.1, kb.0).cmp(&(ka.0 + ka.1, ka.0))
        });
        fmt_sum(f, keys.into_iter().map(|(&(i, j), c)| Mono(c, [("x", i), ("y", j)]).to_string()))
    }
}

impl LinearForm {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(LinearForm { a, b })
    }

    /// `a·x + b·y` from integers.
    pub fn int(a: i64, b: i64) -> Self {
        LinearForm::new(Rational::from(a), Rational::from(b)).expect("nonzero form")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_poly(&self) -> CommPoly {
        let mut p = CommPoly::zero();
        p.add_term(1, 0, self.a.clone());
        p.add_term(0, 1, self.b.clone());
        p
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        &self.a * &other.b == &self.b * &other.a
    }

    pub fn is_x_line(&self) -> bool {
        self.b.is_zero() && !self.a.is_zero()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn power_rule_and_constants() {
        let p = CommPoly::monomial(0, 4, q(1));
        assert_eq!(p.partial_y(), CommPoly::monomial(0, 3, q(4)));
        assert!(CommPoly::constant(q(7)).partial_x().is_zero());
        assert_eq!(CommPoly::zero().degree(), None);
    }

    #[test]
    fn division() {
        let a = LinearForm::int(1, -2);
        let b = LinearForm::int(3, 1);
        let p = &a.to_poly() * &b.to_poly();
        assert_eq!(p.divide_exact(&a).unwrap(), b.to_poly());
        assert_eq!(p.divide_exact(&b).unwrap(), a.to_poly());
        let x2y2 = &CommPoly::monomial(2, 0, q(1)) + &CommPoly::monomial(0, 2, q(1));
        assert!(matches!(x2y2.divide_exact(&LinearForm::int(1, 0)), Err(Error::NotDivisible(..))));
        assert!(x2y2.divide_exact(&LinearForm::int(1, -1)).is_err());
    }

    #[test]
    fn display() {
        let p = &(&CommPoly::monomial(2, 1, Rational::new(3, 2)) - &CommPoly::y()) + &CommPoly::one();
        assert_eq!(p.to_string(), "3/2*x^2*y - y + 1");
    }
}
