//! Central line arrangements in the plane and their defining polynomials.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{CommPoly, LinearForm};
use crate::rational::Rational;

/// A central arrangement of r+2 lines with distinguished line x = 0.
///
/// `forms[0]` is a multiple of x. `F` is the product of the remaining forms
/// rescaled so that its `y^{r+1}` coefficient is 1, `Q = x·F`, and
/// `F = x·F̄ + y^{r+1}`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    forms: Vec<LinearForm>,
    r: u32,
    q: CommPoly,
    f: CommPoly,
    fbar: CommPoly,
    f_terms: Vec<(u32, u32, Rational)>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.forms == other.forms
    }
}

impl Eq for Arrangement {}

/// JSON form of an arrangement: `{"forms": [[a_num, a_den, b_num, b_den], ...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ArrangementJson {
    pub forms: Vec<[i64; 4]>,
}

impl Arrangement {
    /// Build an arrangement with r ≥ 3.
    pub fn build(forms: Vec<LinearForm>) -> Result<Arc<Arrangement>> {
        Self::build_with_min(forms, 5)
    }

    /// Build an arrangement with r ≥ 1. Only some computations accept r < 3.
    pub fn build_small(forms: Vec<LinearForm>) -> Result<Arc<Arrangement>> {
        Self::build_with_min(forms, 3)
    }

    fn build_with_min(forms: Vec<LinearForm>, min_lines: usize) -> Result<Arc<Arrangement>> {
        if forms.iter().any(LinearForm::is_zero) {
            return Err(Error::ZeroForm);
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if forms[i].is_proportional(&forms[j]) {
                    return Err(Error::DuplicateLine(forms[i].to_string(), forms[j].to_string()));
                }
            }
        }
        let xi = forms.iter().position(LinearForm::is_x_line).ok_or(Error::MissingXLine)?;
        if forms.len() < min_lines {
            return Err(Error::TooFewLines { need: min_lines, got: forms.len() });
        }
        let mut ordered = Vec::with_capacity(forms.len());
        ordered.push(forms[xi].clone());
        ordered.extend(forms.iter().enumerate().filter(|(i, _)| *i != xi).map(|(_, f)| f.clone()));
        let r = (ordered.len() - 2) as u32;
        let mut f = CommPoly::one();
        for a in &ordered[1..] {
            f = &f * &a.to_poly();
        }
        let lead = f.coeff(0, r + 1);
        f = f.scale(&lead.recip());
        let q = f.mul_monomial(1, 0);
        let fbar = (&f - &CommPoly::monomial(0, r + 1, Rational::one()))
            .divide_exact(&LinearForm::int(1, 0))
            .expect("F - y^(r+1) is divisible by x");
        let f_terms = f.terms().iter().map(|(&(i, j), c)| (i, j, c.clone())).collect();
        Ok(Arc::new(Arrangement { forms: ordered, r, q, f, fbar, f_terms }))
    }

    /// The arrangement x, y, x−y, x−2y, …, x−n·y (so r = n).
    pub fn example(n: u32) -> Result<Arc<Arrangement>> {
        let mut forms = vec![LinearForm::int(1, 0), LinearForm::int(0, 1)];
        for k in 1..=n as i64 {
            forms.push(LinearForm::int(1, -k));
        }
        if n >= 3 {
            Self::build(forms)
        } else {
            Self::build_small(forms)
        }
    }

    pub fn from_json(json: &ArrangementJson) -> Result<Arc<Arrangement>> {
        let mut forms = Vec::new();
        for [an, ad, bn, bd] in &json.forms {
            if *ad == 0 || *bd == 0 {
                return Err(Error::Parse("zero denominator in arrangement form".into()));
            }
            forms.push(LinearForm::new(Rational::new(*an, *ad), Rational::new(*bn, *bd))?);
        }
        Self::build(forms)
    }

    pub fn to_json(&self) -> ArrangementJson {
        let part = |q: &Rational| -> (i64, i64) {
            let n = q.numer().to_string().parse().expect("form coefficient fits in i64");
            let d = q.denom().to_string().parse().expect("form coefficient fits in i64");
            (n, d)
        };
        ArrangementJson {
            forms: self
                .forms
                .iter()
                .map(|f| {
                    let (an, ad) = part(&f.a);
                    let (bn, bd) = part(&f.b);
                    [an, ad, bn, bd]
                })
                .collect(),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn num_lines(&self) -> usize {
        self.forms.len()
    }

    pub fn q(&self) -> &CommPoly {
        &self.q
    }

    pub fn f(&self) -> &CommPoly {
        &self.f
    }

    pub fn fbar(&self) -> &CommPoly {
        &self.fbar
    }

    /// Monomials `(i, j, c)` of F.
    pub fn f_terms(&self) -> &[(u32, u32, Rational)] {
        &self.f_terms
    }

    pub fn f_x(&self) -> CommPoly {
        self.f.partial_x()
    }

    pub fn f_y(&self) -> CommPoly {
        self.f.partial_y()
    }

    /// The quotients F/α_i for i = 1..=r+1.
    pub fn quotients(&self) -> Vec<CommPoly> {
        self.forms[1..].iter().map(|a| self.f.divide_exact(a).expect("α_i divides F")).collect()
    }

    /// True iff the quotients F/α_i are linearly independent in S_r.
    pub fn quotient_basis_check(&self) -> bool {
        quotients_independent(&self.quotients(), self.r)
    }
}

/// Linear independence of homogeneous polynomials of degree `deg`.
pub fn quotients_independent(polys: &[CommPoly], deg: u32) -> bool {
    let rows = polys.iter().map(|p| {
        linalg::sparse_row(p.terms().iter().filter(|((i, j), _)| i + j == deg).map(|(&(i, _), c)| (i as usize, c.clone())))
    });
    linalg::rank(rows) == polys.len()
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.forms.iter().map(|a| format!("({a})")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Whether `Q` is square-free, by a gcd computation on the dehomogenization.
pub fn is_square_free(q: &CommPoly) -> bool {
    let d = q.degree().unwrap_or(0);
    // x divides Q at most once
    let low_x = q.terms().keys().map(|&(i, _)| i).min().unwrap_or(0);
    if low_x > 1 {
        return false;
    }
    let core = if low_x == 1 { q.divide_exact(&LinearForm::int(1, 0)).expect("x divides") } else { q.clone() };
    // dehomogenize at x = 1: g(t) = core(1, t)
    let deg = d - low_x;
    let g: Vec<Rational> = (0..=deg).map(|j| core.coeff(deg - j, j)).collect();
    let dg: Vec<Rational> = (1..g.len()).map(|j| &g[j] * Rational::from(j as u32)).collect();
    univariate_gcd_degree(&g, &dg) == 0
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn univariate_gcd_degree(a: &[Rational], b: &[Rational]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() && !a.is_empty() {
            let c = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] = &a[i + shift] - &(&c * bi);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_r3() {
        let a = Arrangement::example(3).unwrap();
        assert_eq!(a.r(), 3);
        assert_eq!(a.f().coeff(0, 4), Rational::one());
        // y(x−y)(x−2y)(x−3y) has y^4 coefficient −6
        assert_eq!(a.f().coeff(3, 1), Rational::new(-1, 6));
        let euler = &(&a.f_x().mul_monomial(1, 0) + &a.f_y().mul_monomial(0, 1)) - &a.f().scale(&Rational::from(4));
        assert!(euler.is_zero());
        assert!(a.quotient_basis_check());
        assert!(is_square_free(a.q()));
        assert!(!is_square_free(&(a.q() * &LinearForm::int(1, -1).to_poly())));
    }

    #[test]
    fn errors() {
        let x = LinearForm::int(1, 0);
        assert!(matches!(Arrangement::build(vec![x.clone(), LinearForm::int(2, 0)]), Err(Error::DuplicateLine(..))));
        let no_x: Vec<_> = std::iter::once(LinearForm::int(0, 1)).chain((1..5).map(|k| LinearForm::int(1, -k))).collect();
        assert!(matches!(Arrangement::build(no_x), Err(Error::MissingXLine)));
        assert!(matches!(
            Arrangement::build(vec![x, LinearForm::int(0, 1), LinearForm::int(1, 1)]),
            Err(Error::TooFewLines { .. })
        ));
    }

    #[test]
    fn x_line_moves_to_front() {
        let forms = vec![
            LinearForm::int(0, 1),
            LinearForm::int(1, 1),
            LinearForm::int(3, 0),
            LinearForm::int(1, -1),
            LinearForm::int(1, 2),
        ];
        let a = Arrangement::build(forms).unwrap();
        assert!(a.forms()[0].is_x_line());
        assert_eq!(a.forms()[0].a, Rational::from(3));
    }
}
