//! The free bimodule resolution 𝒫 of A and its dual.
//!
//! Components are A|Λ^pV|A for p = 0..4. A chain is a finite sum of
//! `a|w|b` with `a`, `b` PBW monomials and `w` a [`Wedge`]. The same type
//! stores elements of the dual complex 𝒫^∨, reading `w` as a wedge of hatted
//! letters.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ore::{mul_mono_into, Letter, Mono, OreElement};
use crate::rational::Rational;
use crate::report::{Check, Report};
use crate::wedge::Wedge;

/// A basis tensor `a|w|b`.
pub type Tensor = (Mono, Wedge, Mono);

/// An element of ⊕_p A|Λ^pV|A.
#[derive(Clone)]
pub struct BimoduleChain {
    arr: Arc<Arrangement>,
    terms: LinComb<Tensor>,
}

impl PartialEq for BimoduleChain {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.arr, &other.arr) || *self.arr == *other.arr)
    }
}

impl Eq for BimoduleChain {}

impl fmt::Debug for BimoduleChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl BimoduleChain {
    pub fn zero(arr: &Arc<Arrangement>) -> Self {
        BimoduleChain { arr: arr.clone(), terms: LinComb::new() }
    }

    /// The free generator `1|w|1`.
    pub fn generator(arr: &Arc<Arrangement>, w: Wedge) -> Self {
        Self::tensor(arr, Mono::ONE, w, Mono::ONE, Rational::one())
    }

    pub fn tensor(arr: &Arc<Arrangement>, a: Mono, w: Wedge, b: Mono, c: Rational) -> Self {
        BimoduleChain { arr: arr.clone(), terms: LinComb::single((a, w, b), c) }
    }

    pub fn from_terms(arr: &Arc<Arrangement>, terms: LinComb<Tensor>) -> Self {
        BimoduleChain { arr: arr.clone(), terms }
    }

    /// `a|w|b` for arbitrary elements `a`, `b`.
    pub fn from_elements(a: &OreElement, w: Wedge, b: &OreElement) -> Self {
        let mut terms = LinComb::new();
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                terms.add_term((*m1, w, *m2), c1 * c2);
            }
        }
        BimoduleChain { arr: a.arrangement().clone(), terms }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn terms(&self) -> &LinComb<Tensor> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_term(&mut self, t: Tensor, c: Rational) {
        self.terms.add_term(t, c);
    }

    pub fn add_scaled(&mut self, other: &BimoduleChain, c: &Rational) {
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BimoduleChain { arr: self.arr.clone(), terms: self.terms.scaled(c) }
    }

    /// The wedge length shared by all terms, if any.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(_, w, _)| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn check_degree(&self, p: usize) -> Result<()> {
        match self.terms.keys().map(|(_, w, _)| w.len()).find(|&l| l != p) {
            Some(l) => Err(Error::DegreeMismatch { expected: p, got: l }),
            None => Ok(()),
        }
    }

    /// `a · self`.
    pub fn left_mul(&self, a: &OreElement) -> Self {
        let mut out = LinComb::new();
        let mut buf = LinComb::new();
        for ((l, w, r), c) in &self.terms {
            for (m, c2) in a.terms() {
                mul_mono_into(&self.arr, *m, *l, &(c * c2), &mut buf);
            }
            while let Some((m, k)) = buf.pop_first() {
                out.add_term((m, *w, *r), k);
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }

    /// `self · b`.
    pub fn right_mul(&self, b: &OreElement) -> Self {
        let mut out = LinComb::new();
        let mut buf = LinComb::new();
        for ((l, w, r), c) in &self.terms {
            for (m, c2) in b.terms() {
                mul_mono_into(&self.arr, *r, *m, &(c * c2), &mut buf);
            }
            while let Some((m, k)) = buf.pop_first() {
                out.add_term((*l, *w, m), k);
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }

    /// `[v, self] = v·self − self·v`.
    pub fn bracket_with(&self, v: &OreElement) -> Self {
        &self.left_mul(v) - &self.right_mul(v)
    }

    /// Apply `u|α|v ↦ u|α∧ω|v` termwise, with the wedge sign.
    pub fn wedge_right(&self, omega: Wedge) -> Self {
        let mut out = LinComb::new();
        for ((l, w, r), c) in &self.terms {
            if let Some((s, nw)) = w.wedge(omega) {
                out.add_term((*l, nw, *r), c * Rational::from(s));
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }

    /// Apply `u|α|v ↦ u|ω∧α|v` termwise, with the wedge sign.
    pub fn wedge_left(&self, omega: Wedge) -> Self {
        let mut out = LinComb::new();
        for ((l, w, r), c) in &self.terms {
            if let Some((s, nw)) = omega.wedge(*w) {
                out.add_term((*l, nw, *r), c * Rational::from(s));
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }

    /// The flip `a|w|b ↦ b|w|a`.
    pub fn swap(&self) -> Self {
        BimoduleChain { arr: self.arr.clone(), terms: self.terms.map_keys(|(l, w, r)| (*r, *w, *l)) }
    }

    /// Σ c·l·f(w)·r over the terms `c·l|w|r`, i.e. the A-bilinear extension
    /// of a map defined on free generators.
    pub fn extend_bilinear(&self, mut f: impl FnMut(Wedge) -> BimoduleChain) -> Self {
        let mut cache: HashMap<Wedge, BimoduleChain> = HashMap::new();
        let mut out = LinComb::new();
        let mut lbuf = LinComb::new();
        let mut rbuf = LinComb::new();
        for ((l, w, r), c) in &self.terms {
            let img = cache.entry(*w).or_insert_with(|| f(*w));
            for ((l2, w2, r2), c2) in &img.terms {
                mul_mono_into(&self.arr, *l, *l2, &(c * c2), &mut lbuf);
                mul_mono_into(&self.arr, *r2, *r, &Rational::one(), &mut rbuf);
                for (ml, kl) in &lbuf {
                    for (mr, kr) in &rbuf {
                        out.add_term((*ml, *w2, *mr), kl * kr);
                    }
                }
                lbuf = LinComb::new();
                rbuf = LinComb::new();
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }

    /// The component on the free generator `w`, as an element of A⊗A^op
    /// written `Σ c·a|b`.
    pub fn component(&self, w: Wedge) -> LinComb<(Mono, Mono)> {
        self.terms.iter().filter(|((_, w2, _), _)| *w2 == w).map(|((l, _, r), c)| ((*l, *r), c.clone())).collect()
    }

    /// Generators carrying a nonzero component.
    pub fn support(&self) -> Vec<Wedge> {
        let mut v: Vec<Wedge> = self.terms.keys().map(|(_, w, _)| *w).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Internal degree of every term, if uniform: deg a + deg w + deg b.
    pub fn internal_degree(&self) -> Option<u32> {
        let r = self.arr.r();
        let mut it = self.terms.keys().map(|(l, w, b)| l.internal_degree(r) + w.degree(r) + b.internal_degree(r));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Apply `f` to the right factor of every term.
    pub fn map_right(&self, mut f: impl FnMut(&Mono) -> OreElement) -> Self {
        let mut out = LinComb::new();
        let mut cache: HashMap<Mono, OreElement> = HashMap::new();
        for ((l, w, r), c) in &self.terms {
            let img = cache.entry(*r).or_insert_with(|| f(r));
            for (m, k) in img.terms() {
                out.add_term((*l, *w, *m), c * k);
            }
        }
        BimoduleChain { arr: self.arr.clone(), terms: out }
    }
}

impl Add for &BimoduleChain {
    type Output = BimoduleChain;
    fn add(self, rhs: &BimoduleChain) -> BimoduleChain {
        let mut t = self.terms.clone();
        t.add_assign(&rhs.terms);
        BimoduleChain { arr: self.arr.clone(), terms: t }
    }
}

impl Sub for &BimoduleChain {
    type Output = BimoduleChain;
    fn sub(self, rhs: &BimoduleChain) -> BimoduleChain {
        let mut t = self.terms.clone();
        t.sub_assign(&rhs.terms);
        BimoduleChain { arr: self.arr.clone(), terms: t }
    }
}

impl Neg for &BimoduleChain {
    type Output = BimoduleChain;
    fn neg(self) -> BimoduleChain {
        self.scale(&-Rational::one())
    }
}

impl Add for BimoduleChain {
    type Output = BimoduleChain;
    fn add(self, rhs: BimoduleChain) -> BimoduleChain {
        &self + &rhs
    }
}

impl Sub for BimoduleChain {
    type Output = BimoduleChain;
    fn sub(self, rhs: BimoduleChain) -> BimoduleChain {
        &self - &rhs
    }
}

impl Neg for BimoduleChain {
    type Output = BimoduleChain;
    fn neg(self) -> BimoduleChain {
        -&self
    }
}

impl fmt::Display for BimoduleChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((l, w, r), c) in &self.terms {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{l}|{w}|{r}")?;
        }
        Ok(())
    }
}

/// Deliberate corruptions of the differential, for mutation tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Drop the `+1|x|1` term of d₂(1|x∧E|1).
    DropXETerm,
}

fn gen(arr: &Arc<Arrangement>, letters: &[Letter]) -> BimoduleChain {
    BimoduleChain::generator(arr, Wedge::of(letters))
}

/// `∇_which^{1|w|1}(F) = Σ c Σ_{s+t+1=i} x^s|w|x^t y^j` (which = x) or
/// `Σ c Σ_{s+t+1=j} x^i y^s|w|y^t` (which = y).
pub fn nabla_chain(arr: &Arc<Arrangement>, which: Letter, w: Wedge) -> BimoduleChain {
    let mut out = BimoduleChain::zero(arr);
    for (i, j, c) in arr.f_terms() {
        let n = match which {
            Letter::X => *i,
            Letter::Y => *j,
            _ => panic!("∇ is defined for x and y only"),
        };
        for s in 0..n {
            let t = n - 1 - s;
            let (l, r) = match which {
                Letter::X => (Mono::new(s, 0, 0, 0), Mono::new(t, *j, 0, 0)),
                _ => (Mono::new(*i, s, 0, 0), Mono::new(0, t, 0, 0)),
            };
            out.add_term((l, w, r), c.clone());
        }
    }
    out
}

/// The image of [`nabla_chain`] under `a|w|b ↦ b|w|a`.
pub fn nabla_tilde(arr: &Arc<Arrangement>, which: Letter, w: Wedge) -> BimoduleChain {
    nabla_chain(arr, which, w).swap()
}

/// ∇(F) = ∇_x^x(F) + ∇_y^y(F) in A|V|A.
pub fn nabla_f(arr: &Arc<Arrangement>) -> BimoduleChain {
    &nabla_chain(arr, Letter::X, Wedge::letter(Letter::X)) + &nabla_chain(arr, Letter::Y, Wedge::letter(Letter::Y))
}

/// d(1|w|1) with an optional corruption.
pub fn generator_d_with(arr: &Arc<Arrangement>, w: Wedge, mutation: Mutation) -> BimoduleChain {
    use Letter::*;
    let letters = w.letters();
    let el = |l: Letter| OreElement::letter(arr, l);
    let r = Rational::from(arr.r());
    // Σ_i (−1)^i [v_i, 1|v_0…v̂_i…|1]
    let mut out = BimoduleChain::zero(arr);
    for (i, v) in letters.iter().enumerate() {
        let rest: Vec<Letter> = letters.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, l)| *l).collect();
        let term = gen(arr, &rest).bracket_with(&el(*v));
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_scaled(&term, &sign);
    }
    let extra = match letters.as_slice() {
        [X, E] => {
            if mutation == Mutation::DropXETerm {
                BimoduleChain::zero(arr)
            } else {
                gen(arr, &[X])
            }
        }
        [Y, E] => gen(arr, &[Y]),
        [Y, D] => nabla_f(arr),
        [D, E] => gen(arr, &[D]).scale(&r),
        [X, Y, D] => nabla_f(arr).wedge_right(Wedge::letter(X)),
        [X, Y, E] => gen(arr, &[X, Y]).scale(&Rational::from(-2)),
        [X, D, E] => gen(arr, &[X, D]).scale(&-(&r + Rational::one())),
        [Y, D, E] => &nabla_f(arr).wedge_right(Wedge::letter(E)) - &gen(arr, &[Y, D]).scale(&(&r + Rational::one())),
        [X, Y, D, E] => &nabla_f(arr).wedge_right(Wedge::of(&[X, E])) + &gen(arr, &[X, Y, D]).scale(&(&r + Rational::from(2))),
        _ => BimoduleChain::zero(arr),
    };
    &out + &extra
}

/// d(1|w|1) for a free generator of positive length.
pub fn generator_d(arr: &Arc<Arrangement>, w: Wedge) -> BimoduleChain {
    generator_d_with(arr, w, Mutation::None)
}

/// The differential d_p: A|Λ^pV|A → A|Λ^{p−1}V|A.
pub fn d(p: usize, c: &BimoduleChain) -> Result<BimoduleChain> {
    d_with(p, c, Mutation::None)
}

pub fn d_with(p: usize, c: &BimoduleChain, mutation: Mutation) -> Result<BimoduleChain> {
    if !(1..=4).contains(&p) {
        return Err(Error::UnsupportedDegree(format!("d_{p}")));
    }
    c.check_degree(p)?;
    let arr = c.arrangement().clone();
    Ok(c.extend_bilinear(|w| generator_d_with(&arr, w, mutation)))
}

/// The augmentation A|A → A, `a|b ↦ ab`.
pub fn augment(c: &BimoduleChain) -> Result<OreElement> {
    c.check_degree(0)?;
    let mut out = LinComb::new();
    for ((l, _, r), k) in c.terms() {
        mul_mono_into(c.arrangement(), *l, *r, k, &mut out);
    }
    Ok(OreElement::from_terms(c.arrangement(), out))
}

/// Checks d∘d = 0 and the augmentation on all 15 free generators.
pub fn verify_complex(arr: &Arc<Arrangement>) -> Report {
    verify_complex_with(arr, Mutation::None)
}

pub fn verify_complex_with(arr: &Arc<Arrangement>, mutation: Mutation) -> Report {
    let mut report = Report::new();
    for p in 1..=4 {
        for w in Wedge::all_of_len(p) {
            let g = BimoduleChain::generator(arr, w);
            let dg = d_with(p, &g, mutation).expect("degree matches");
            let check = format!("d{}∘d{}", p - 1, p);
            let residual = if p == 1 {
                let a = augment(&dg).expect("degree 0");
                (!a.is_zero()).then(|| a.to_string())
            } else {
                let dd = d_with(p - 1, &dg, mutation).expect("degree matches");
                (!dd.is_zero()).then(|| dd.to_string())
            };
            report.push(Check::new(check, format!("1|{w}|1"), residual));
        }
    }
    report
}

/// The dual differential d_p^∨: A|Λ^{p−1}V*|A → A|Λ^pV*|A on a free generator.
///
/// Obtained from d_p by transposition: every term `c·l|w|r` of d_p(1|w''|1)
/// contributes `c·r|ŵ''|l` to d_p^∨(1|ŵ|1).
pub fn dual_generator_d(arr: &Arc<Arrangement>, w: Wedge) -> BimoduleChain {
    let p = w.len() + 1;
    let mut out = BimoduleChain::zero(arr);
    for w2 in Wedge::all_of_len(p) {
        let img = generator_d(arr, w2);
        for ((l, w1, r), c) in img.terms() {
            if *w1 == w {
                out.add_term((*r, w2, *l), c.clone());
            }
        }
    }
    out
}

/// The differential d_p^∨ of 𝒫^∨, for p = 1..4, extended A-bilinearly.
pub fn dual_d(p: usize, c: &BimoduleChain) -> Result<BimoduleChain> {
    if !(1..=4).contains(&p) {
        return Err(Error::UnsupportedDegree(format!("d^∨_{p}")));
    }
    c.check_degree(p - 1)?;
    let arr = c.arrangement().clone();
    Ok(c.extend_bilinear(|w| dual_generator_d(&arr, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn d1_on_x() {
        let a = Arrangement::example(3).unwrap();
        let got = d(1, &gen(&a, &[X])).unwrap();
        let mut want = BimoduleChain::zero(&a);
        want.add_term((X.mono(), Wedge::EMPTY, Mono::ONE), Rational::one());
        want.add_term((Mono::ONE, Wedge::EMPTY, X.mono()), -Rational::one());
        assert_eq!(got, want);
    }

    #[test]
    fn complex_closes() {
        for n in 3..=4 {
            let a = Arrangement::example(n).unwrap();
            let rep = verify_complex(&a);
            assert_eq!(rep.len(), 15);
            assert!(rep.pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn mutation_is_localized() {
        let a = Arrangement::example(3).unwrap();
        let rep = verify_complex_with(&a, Mutation::DropXETerm);
        let failed: Vec<_> = rep.failures().map(|c| c.generator.clone()).collect();
        assert!(failed.contains(&"1|x∧E|1".to_string()), "{failed:?}");
    }

    #[test]
    fn degree_mismatch() {
        let a = Arrangement::example(3).unwrap();
        assert!(matches!(d(2, &gen(&a, &[X])), Err(Error::DegreeMismatch { .. })));
    }
}
