//! The cochain complex A⊗ΛV* computing Hochschild cohomology, its homotopy
//! and the catalog of representing cocycles.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::morphism::Derivation;
use crate::ore::{mul_mono_into, Letter, Mono, OreElement};
use crate::poly::CommPoly;
use crate::rational::Rational;
use crate::resolution::generator_d;
use crate::wedge::Wedge;

/// An element of A⊗Λ^pV*: a coefficient in A for each dual wedge.
#[derive(Clone)]
pub struct Cochain {
    arr: Arc<Arrangement>,
    terms: LinComb<(Wedge, Mono)>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.arr, &other.arr) || *self.arr == *other.arr)
    }
}

impl Eq for Cochain {}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.support().into_iter().map(|w| format!("({})⊗{}", self.component(w), w.dual_name())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Cochain {
    pub fn zero(arr: &Arc<Arrangement>) -> Self {
        Cochain { arr: arr.clone(), terms: LinComb::new() }
    }

    /// `a ⊗ ŵ`.
    pub fn single(w: Wedge, a: &OreElement) -> Self {
        let mut c = Cochain::zero(a.arrangement());
        c.add_component(w, a);
        c
    }

    /// Build from `(ŵ, a)` pairs.
    pub fn from_components(arr: &Arc<Arrangement>, parts: &[(Wedge, OreElement)]) -> Self {
        let mut c = Cochain::zero(arr);
        for (w, a) in parts {
            c.add_component(*w, a);
        }
        c
    }

    pub fn from_terms(arr: &Arc<Arrangement>, terms: LinComb<(Wedge, Mono)>) -> Self {
        Cochain { arr: arr.clone(), terms }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn terms(&self) -> &LinComb<(Wedge, Mono)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_component(&mut self, w: Wedge, a: &OreElement) {
        for (m, c) in a.terms() {
            self.terms.add_term((w, *m), c.clone());
        }
    }

    /// The coefficient of ŵ.
    pub fn component(&self, w: Wedge) -> OreElement {
        let t = self.terms.iter().filter(|((w2, _), _)| *w2 == w).map(|((_, m), c)| (*m, c.clone())).collect();
        OreElement::from_terms(&self.arr, t)
    }

    pub fn support(&self) -> Vec<Wedge> {
        let mut v: Vec<Wedge> = self.terms.keys().map(|(w, _)| *w).collect();
        v.dedup();
        v
    }

    /// The common wedge length of all terms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(w, _)| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn check_degree(&self, p: usize) -> Result<()> {
        match self.terms.keys().map(|(w, _)| w.len()).find(|&l| l != p) {
            Some(l) => Err(Error::DegreeMismatch { expected: p, got: l }),
            None => Ok(()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        Cochain { arr: self.arr.clone(), terms: self.terms.scaled(c) }
    }

    /// Internal degree of every term: deg a − #{x̂,ŷ} − r·#{D̂}.
    pub fn term_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        let r = self.arr.r();
        self.terms.keys().map(move |(w, m)| m.internal_degree(r) as i64 - w.degree(r) as i64)
    }

    pub fn internal_degree(&self) -> Option<i64> {
        let mut it = self.term_degrees();
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.internal_degree().is_some()
    }

    /// Largest E-exponent among the coefficients.
    pub fn e_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, m)| m.e).max()
    }

    /// Apply `f` to each coefficient.
    pub fn map_components(&self, mut f: impl FnMut(Wedge, &OreElement) -> OreElement) -> Cochain {
        let mut out = Cochain::zero(&self.arr);
        for w in self.support() {
            out.add_component(w, &f(w, &self.component(w)));
        }
        out
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        let mut t = self.terms.clone();
        t.add_assign(&rhs.terms);
        Cochain { arr: self.arr.clone(), terms: t }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        let mut t = self.terms.clone();
        t.sub_assign(&rhs.terms);
        Cochain { arr: self.arr.clone(), terms: t }
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scale(&-Rational::one())
    }
}

impl Add for Cochain {
    type Output = Cochain;
    fn add(self, rhs: Cochain) -> Cochain {
        &self + &rhs
    }
}

impl Sub for Cochain {
    type Output = Cochain;
    fn sub(self, rhs: Cochain) -> Cochain {
        &self - &rhs
    }
}

impl Neg for Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        -&self
    }
}

fn w(ls: &[Letter]) -> Wedge {
    Wedge::of(ls)
}

/// The differential of a single term `a ⊗ ŵ`, written out generator by generator.
fn hh_d_component(arr: &Arc<Arrangement>, wd: Wedge, a: &OreElement) -> Vec<(Wedge, OreElement)> {
    use Letter::*;
    let x = OreElement::x(arr);
    let y = OreElement::y(arr);
    let d = OreElement::d(arr);
    let e = OreElement::e(arr);
    let f = arr.f();
    let r = Rational::from(arr.r());
    let br = |v: &OreElement| v.ad(a);
    let nx = || OreElement::nabla(a, X, f);
    let ny = || OreElement::nabla(a, Y, f);
    match wd.letters().as_slice() {
        [] => vec![(w(&[X]), br(&x)), (w(&[Y]), br(&y)), (w(&[D]), br(&d)), (w(&[E]), br(&e))],
        [X] => vec![(w(&[X, Y]), -br(&y)), (w(&[X, E]), a - &br(&e)), (w(&[X, D]), -br(&d)), (w(&[Y, D]), nx())],
        [Y] => vec![(w(&[X, Y]), br(&x)), (w(&[Y, E]), a - &br(&e)), (w(&[Y, D]), &ny() - &br(&d))],
        [D] => vec![(w(&[X, D]), br(&x)), (w(&[Y, D]), br(&y)), (w(&[D, E]), &a.scale(&r) - &br(&e))],
        [E] => vec![(w(&[X, E]), br(&x)), (w(&[Y, E]), br(&y)), (w(&[D, E]), br(&d))],
        [X, Y] => vec![(w(&[X, Y, D]), &br(&d) - &ny()), (w(&[X, Y, E]), &br(&e) - &a.scale(&Rational::from(2)))],
        [X, E] => vec![(w(&[X, Y, E]), -br(&y)), (w(&[X, D, E]), -br(&d)), (w(&[Y, D, E]), nx())],
        [Y, E] => vec![(w(&[X, Y, E]), br(&x)), (w(&[Y, D, E]), &ny() - &br(&d))],
        [X, D] => vec![(w(&[X, Y, D]), -br(&y)), (w(&[X, D, E]), &br(&e) - &a.scale(&(&r + Rational::one())))],
        [Y, D] => vec![(w(&[X, Y, D]), br(&x)), (w(&[Y, D, E]), &br(&e) - &a.scale(&(&r + Rational::one())))],
        [D, E] => vec![(w(&[X, D, E]), br(&x)), (w(&[Y, D, E]), br(&y))],
        [X, Y, D] => vec![(Wedge::TOP, &a.scale(&(&r + Rational::from(2))) - &br(&e))],
        [X, Y, E] => vec![(Wedge::TOP, &br(&d) - &ny())],
        [X, D, E] => vec![(Wedge::TOP, -br(&y))],
        [Y, D, E] => vec![(Wedge::TOP, br(&x))],
        _ => vec![],
    }
}

/// The differential d^p: A⊗Λ^pV* → A⊗Λ^{p+1}V*.
pub fn hh_d(p: usize, c: &Cochain) -> Result<Cochain> {
    if p > 4 {
        return Err(Error::UnsupportedDegree(format!("d^{p}")));
    }
    c.check_degree(p)?;
    let mut out = Cochain::zero(&c.arr);
    for wd in c.support() {
        for (w2, v) in hh_d_component(&c.arr, wd, &c.component(wd)) {
            out.add_component(w2, &v);
        }
    }
    Ok(out)
}

/// The same differential obtained as `α ↦ α∘d`: a term `c·l|w|r` of
/// d(1|w'|1) contributes `c·l·α(w)·r` to the ŵ' coefficient.
pub fn hh_d_via_resolution(p: usize, c: &Cochain) -> Result<Cochain> {
    c.check_degree(p)?;
    let arr = &c.arr;
    let mut out = LinComb::new();
    let mut buf = LinComb::new();
    let mut buf2 = LinComb::new();
    for w2 in Wedge::all_of_len(p + 1) {
        for ((l, wd, r), k) in generator_d(arr, w2).terms() {
            for ((w1, m), v) in c.terms() {
                if w1 != wd {
                    continue;
                }
                mul_mono_into(arr, *l, *m, &(k * v), &mut buf);
                for (m2, v2) in &buf {
                    mul_mono_into(arr, *m2, *r, v2, &mut buf2);
                }
                buf = LinComb::new();
                while let Some((m3, v3)) = buf2.pop_first() {
                    out.add_term((w2, m3), v3);
                }
            }
        }
    }
    Ok(Cochain { arr: arr.clone(), terms: out })
}

pub fn is_cocycle(c: &Cochain) -> bool {
    match c.degree() {
        None => true,
        Some(p) => hh_d(p, c).map(|v| v.is_zero()).unwrap_or(false),
    }
}

/// The homotopy s^p: A⊗Λ^pV* → A⊗Λ^{p−1}V*, contracting Ê from the right
/// with sign (−1)^{p−1}.
pub fn homotopy_s(p: usize, c: &Cochain) -> Result<Cochain> {
    if !(1..=4).contains(&p) {
        return Err(Error::UnsupportedDegree(format!("s^{p}")));
    }
    c.check_degree(p)?;
    let sign = if p % 2 == 1 { Rational::one() } else { -Rational::one() };
    let e = Wedge::letter(Letter::E);
    let mut out = LinComb::new();
    for ((wd, m), v) in c.terms() {
        if wd.contains(Letter::E) {
            let rest = Wedge::from_letters(&wd.letters().into_iter().filter(|l| *l != Letter::E).collect::<Vec<_>>())
                .expect("distinct")
                .1;
            debug_assert_eq!(rest.wedge(e).map(|t| t.0), Some(1));
            out.add_term((rest, *m), v * &sign);
        }
    }
    Ok(Cochain { arr: c.arr.clone(), terms: out })
}

/// γ: multiply each term by its internal degree.
pub fn euler_gamma(c: &Cochain) -> Cochain {
    let r = c.arr.r();
    let mut out = LinComb::new();
    for ((wd, m), v) in c.terms() {
        let deg = m.internal_degree(r) as i64 - wd.degree(r) as i64;
        out.add_term((*wd, *m), v * Rational::from(deg));
    }
    Cochain { arr: c.arr.clone(), terms: out }
}

/// `(d s + s d)(c) − γ(c)` for a cochain of degree `p`.
pub fn homotopy_defect(p: usize, c: &Cochain) -> Result<Cochain> {
    let ds = if p >= 1 { hh_d(p - 1, &homotopy_s(p, c)?)? } else { Cochain::zero(&c.arr) };
    let sd = if p < 4 { homotopy_s(p + 1, &hh_d(p, c)?)? } else { Cochain::zero(&c.arr) };
    Ok(&(&ds + &sd) - &euler_gamma(c))
}

/// ω₂ = (yD − y^{r+1}E)⊗x̂∧D̂ + yF̄E⊗ŷ∧D̂.
pub fn omega2(arr: &Arc<Arrangement>) -> Cochain {
    let (a, b) = omega_coefficients(arr);
    Cochain::from_components(arr, &[(w(&[Letter::X, Letter::D]), a), (w(&[Letter::Y, Letter::D]), b)])
}

/// ω₃ = (yD − y^{r+1}E)⊗x̂∧D̂∧Ê + yF̄E⊗ŷ∧D̂∧Ê.
pub fn omega3(arr: &Arc<Arrangement>) -> Cochain {
    use Letter::*;
    let (a, b) = omega_coefficients(arr);
    Cochain::from_components(arr, &[(w(&[X, D, E]), a), (w(&[Y, D, E]), b)])
}

fn omega_coefficients(arr: &Arc<Arrangement>) -> (OreElement, OreElement) {
    let r = arr.r();
    let one = Rational::one();
    let a = &OreElement::mono(arr, Mono::new(0, 1, 1, 0), one.clone())
        - &OreElement::mono(arr, Mono::new(0, r + 1, 0, 1), one.clone());
    let yfbar = arr.fbar().mul_monomial(0, 1);
    let b = &OreElement::from_poly(arr, &yfbar) * &OreElement::e(arr);
    (a, b)
}

/// `p ⊗ ŵ` for a polynomial coefficient.
pub fn poly_cochain(arr: &Arc<Arrangement>, p: &CommPoly, wd: Wedge) -> Cochain {
    Cochain::single(wd, &OreElement::from_poly(arr, p))
}

/// The derivation ∂_α for the i-th line: zero on S, δ ↦ δ(α)/α on E and D.
pub fn partial_derivation_morphism(arr: &Arc<Arrangement>, i: usize) -> Result<Derivation> {
    let alpha = arr.forms().get(i).ok_or(Error::IndexOutOfRange { index: i, len: arr.num_lines() })?;
    let dq = arr.f().scale(&alpha.b).divide_exact(alpha)?;
    let images = [OreElement::zero(arr), OreElement::zero(arr), OreElement::from_poly(arr, &dq), OreElement::one(arr)];
    Ok(Derivation::new_unchecked(arr, images))
}

/// The 1-cocycle α_y·F/α ⊗ D̂ + 1⊗Ê representing ∂_α for the i-th line,
/// together with the derivation itself.
pub fn partial_derivation(arr: &Arc<Arrangement>, i: usize) -> Result<(Cochain, Derivation)> {
    let der = partial_derivation_morphism(arr, i)?;
    Ok((derivation_cochain(&der), der))
}

/// δ(x)⊗x̂ + δ(y)⊗ŷ + δ(D)⊗D̂ + δ(E)⊗Ê.
pub fn derivation_cochain(der: &Derivation) -> Cochain {
    let arr = der.arrangement();
    let parts: Vec<(Wedge, OreElement)> = Letter::ALL.iter().map(|l| (Wedge::letter(*l), der.image(*l).clone())).collect();
    Cochain::from_components(arr, &parts)
}

/// Representatives for the summands of HH² and HH³ described by a
/// polynomial `v ∈ S_{r+1}` and a linear form `w ∈ S_1`: `(v + wD)⊗ŷ∧D̂`
/// and its Ê-extension.
pub fn family_yd(arr: &Arc<Arrangement>, v: &CommPoly, wl: &CommPoly, with_e: bool) -> Cochain {
    use Letter::*;
    let coeff = &OreElement::from_poly(arr, v) + &(&OreElement::from_poly(arr, wl) * &OreElement::d(arr));
    let wd = if with_e { w(&[Y, D, E]) } else { w(&[Y, D]) };
    Cochain::single(wd, &coeff)
}

/// `u⊗D̂ + λ⊗Ê` for `u ∈ S_r`.
pub fn hh1_element(arr: &Arc<Arrangement>, u: &CommPoly, lambda: &Rational) -> Cochain {
    use Letter::*;
    Cochain::from_components(arr, &[(w(&[D]), OreElement::from_poly(arr, u)), (w(&[E]), OreElement::scalar(arr, lambda.clone()))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    #[test]
    fn d0_of_e() {
        let a = Arrangement::example(3).unwrap();
        let c = Cochain::single(Wedge::EMPTY, &OreElement::e(&a));
        let got = hh_d(0, &c).unwrap();
        let want = Cochain::from_components(
            &a,
            &[
                (Wedge::letter(Letter::X), -OreElement::x(&a)),
                (Wedge::letter(Letter::Y), -OreElement::y(&a)),
                (Wedge::letter(Letter::D), OreElement::d(&a).scale(&Rational::from(-3))),
            ],
        );
        assert_eq!(got, want);
        assert!(hh_d(0, &Cochain::single(Wedge::EMPTY, &OreElement::one(&a))).unwrap().is_zero());
        assert!(hh_d(1, &Cochain::single(Wedge::letter(Letter::E), &OreElement::one(&a))).unwrap().is_zero());
    }

    #[test]
    fn explicit_matches_resolution() {
        let a = Arrangement::example(3).unwrap();
        let coeffs = ["x*y*D*E + E^2", "y^3*D + 2*x", "D^2*E - x*y", "y*E^3"];
        for p in 0..4 {
            for wd in Wedge::all_of_len(p) {
                for s in coeffs {
                    let c = Cochain::single(wd, &parse_element(&a, s).unwrap());
                    assert_eq!(hh_d(p, &c).unwrap(), hh_d_via_resolution(p, &c).unwrap(), "{c}");
                }
            }
        }
    }

    #[test]
    fn homotopy_example() {
        let a = Arrangement::example(3).unwrap();
        let c = Cochain::single(w(&[Letter::X, Letter::E]), &parse_element(&a, "y^2").unwrap());
        assert!(homotopy_defect(2, &c).unwrap().is_zero());
        let s = homotopy_s(1, &Cochain::single(Wedge::letter(Letter::D), &OreElement::x(&a))).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn catalog_cocycles() {
        for n in 3..=4 {
            let a = Arrangement::example(n).unwrap();
            assert!(is_cocycle(&omega2(&a)));
            assert!(is_cocycle(&omega3(&a)));
            assert_eq!(omega2(&a).internal_degree(), Some(0));
            for i in 0..a.num_lines() {
                let (c, der) = partial_derivation(&a, i).unwrap();
                assert!(is_cocycle(&c), "∂_{i}");
                assert!(der.relation_residuals().iter().all(|(_, v)| v.is_zero()));
            }
        }
    }
}
