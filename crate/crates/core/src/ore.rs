//! The algebra A = S[D][E] of differential operators tangent to an
//! arrangement, in the PBW basis x^i y^j D^k E^l.
//!
//! Relations: `[y,x] = 0`, `[D,x] = 0`, `[D,y] = F`, `[E,x] = x`, `[E,y] = y`,
//! `[E,D] = rD`. Internal degrees: x, y have degree 1, D degree r, E degree 0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::poly::{add_exp, fmt_monomial, fmt_sum, CommPoly};
use crate::rational::Rational;

/// A generator of A.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    X,
    Y,
    D,
    E,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X, Letter::Y, Letter::D, Letter::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter::X => "x",
            Letter::Y => "y",
            Letter::D => "D",
            Letter::E => "E",
        }
    }

    pub fn degree(self, r: u32) -> u32 {
        match self {
            Letter::X | Letter::Y => 1,
            Letter::D => r,
            Letter::E => 0,
        }
    }

    pub fn mono(self) -> Mono {
        match self {
            Letter::X => Mono::new(1, 0, 0, 0),
            Letter::Y => Mono::new(0, 1, 0, 0),
            Letter::D => Mono::new(0, 0, 1, 0),
            Letter::E => Mono::new(0, 0, 0, 1),
        }
    }
}

/// The PBW monomial x^x y^y D^d E^e.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
    pub d: u32,
    pub e: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, y: 0, d: 0, e: 0 };

    pub const fn new(x: u32, y: u32, d: u32, e: u32) -> Mono {
        Mono { x, y, d, e }
    }

    pub fn is_one(&self) -> bool {
        *self == Mono::ONE
    }

    pub fn internal_degree(&self, r: u32) -> u32 {
        self.x + self.y + r * self.d
    }

    pub fn filtration_degree(&self) -> u32 {
        self.d + self.e
    }

    pub fn exponent_sum(&self) -> u32 {
        self.x + self.y + self.d + self.e
    }

    pub fn exp(&self, l: Letter) -> u32 {
        match l {
            Letter::X => self.x,
            Letter::Y => self.y,
            Letter::D => self.d,
            Letter::E => self.e,
        }
    }

    /// The PBW word of this monomial.
    pub fn word(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.exponent_sum() as usize);
        for l in Letter::ALL {
            w.extend(std::iter::repeat_n(l, self.exp(l) as usize));
        }
        w
    }

    /// The monomial of a word that is already in PBW order.
    pub fn from_sorted_word(w: &[Letter]) -> Mono {
        let mut m = Mono::ONE;
        for l in w {
            match l {
                Letter::X => m.x += 1,
                Letter::Y => m.y += 1,
                Letter::D => m.d += 1,
                Letter::E => m.e += 1,
            }
        }
        m
    }

    /// All PBW monomials with exponent sum at most `depth`, by total degree.
    pub fn all_up_to(depth: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        for s in 0..=depth {
            for x in 0..=s {
                for y in 0..=s - x {
                    for d in 0..=s - x - y {
                        out.push(Mono { x, y, d, e: s - x - y - d });
                    }
                }
            }
        }
        out
    }

    pub fn in_s(&self) -> bool {
        self.d == 0 && self.e == 0
    }

    pub fn in_t(&self) -> bool {
        self.x == 0 && self.y == 0 && self.d == 0
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_monomial(f, &Rational::one(), &[("x", self.x), ("y", self.y), ("D", self.d), ("E", self.e)])
    }
}

/// Apply δ = F·∂_y to a polynomial in S given as exponent-pair terms.
pub(crate) fn delta_s(f_terms: &[(u32, u32, Rational)], p: &LinComb<(u32, u32)>) -> LinComb<(u32, u32)> {
    let mut out = LinComb::new();
    for (&(i, j), c) in p {
        if j == 0 {
            continue;
        }
        let cj = c * Rational::from(j);
        for (a, b, fc) in f_terms {
            out.add_term((add_exp(i, *a), add_exp(j - 1, *b)), &cj * fc);
        }
    }
    out
}

/// Accumulate `coeff · m1 · m2` in PBW normal form into `out`.
pub(crate) fn mul_mono_into(arr: &Arrangement, m1: Mono, m2: Mono, coeff: &Rational, out: &mut LinComb<Mono>) {
    if m1.d == 0 && m1.e == 0 {
        let m = Mono::new(add_exp(m1.x, m2.x), add_exp(m1.y, m2.y), m2.d, m2.e);
        out.add_term(m, coeff.clone());
        return;
    }
    let r = arr.r();
    // E^l · x^a y^b D^c = x^a y^b D^c (E + a + b + rc)^l
    let shift = Rational::from(m2.internal_degree(r));
    let e_part: Vec<(u32, Rational)> = (0..=m1.e)
        .map(|t| (add_exp(t, m2.e), Rational::binomial(m1.e, t) * shift.pow(m1.e - t)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    // D^k · g = Σ_s C(k,s) δ^s(g) D^{k−s}
    let mut ds = LinComb::single((m2.x, m2.y), Rational::one());
    for s in 0..=m1.d {
        if s > 0 {
            ds = delta_s(arr.f_terms(), &ds);
            if ds.is_zero() {
                break;
            }
        }
        let bin = coeff * Rational::binomial(m1.d, s);
        let dexp = add_exp(m1.d - s, m2.d);
        for (&(p, q), c) in &ds {
            let base = &bin * c;
            for (ee, ec) in &e_part {
                let m = Mono::new(add_exp(m1.x, p), add_exp(m1.y, q), dexp, *ee);
                out.add_term(m, &base * ec);
            }
        }
    }
}

/// An element of A, tied to its arrangement.
#[derive(Clone)]
pub struct OreElement {
    arr: Arc<Arrangement>,
    terms: LinComb<Mono>,
}

fn same_arr(a: &Arc<Arrangement>, b: &Arc<Arrangement>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for OreElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_arr(&self.arr, &other.arr)
    }
}

impl Eq for OreElement {}

impl fmt::Debug for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl OreElement {
    pub fn zero(arr: &Arc<Arrangement>) -> Self {
        OreElement { arr: arr.clone(), terms: LinComb::new() }
    }

    pub fn one(arr: &Arc<Arrangement>) -> Self {
        Self::scalar(arr, Rational::one())
    }

    pub fn scalar(arr: &Arc<Arrangement>, c: Rational) -> Self {
        Self::mono(arr, Mono::ONE, c)
    }

    pub fn mono(arr: &Arc<Arrangement>, m: Mono, c: Rational) -> Self {
        OreElement { arr: arr.clone(), terms: LinComb::single(m, c) }
    }

    pub fn letter(arr: &Arc<Arrangement>, l: Letter) -> Self {
        Self::mono(arr, l.mono(), Rational::one())
    }

    pub fn x(arr: &Arc<Arrangement>) -> Self {
        Self::letter(arr, Letter::X)
    }

    pub fn y(arr: &Arc<Arrangement>) -> Self {
        Self::letter(arr, Letter::Y)
    }

    pub fn d(arr: &Arc<Arrangement>) -> Self {
        Self::letter(arr, Letter::D)
    }

    pub fn e(arr: &Arc<Arrangement>) -> Self {
        Self::letter(arr, Letter::E)
    }

    pub fn from_terms(arr: &Arc<Arrangement>, terms: LinComb<Mono>) -> Self {
        OreElement { arr: arr.clone(), terms }
    }

    pub fn from_poly(arr: &Arc<Arrangement>, p: &CommPoly) -> Self {
        Self::from_terms(arr, p.terms().map_keys(|&(i, j)| Mono::new(i, j, 0, 0)))
    }

    /// Σ c_n E^n from coefficients `[c_0, c_1, ...]`.
    pub fn from_e_poly(arr: &Arc<Arrangement>, coeffs: &[Rational]) -> Self {
        Self::from_terms(arr, coeffs.iter().enumerate().map(|(n, c)| (Mono::new(0, 0, 0, n as u32), c.clone())).collect())
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn terms(&self) -> &LinComb<Mono> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.coeff(m)
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        self.terms.add_term(m, c);
    }

    pub fn check_same(&self, other: &OreElement) -> Result<()> {
        if same_arr(&self.arr, &other.arr) {
            Ok(())
        } else {
            Err(Error::ArrangementMismatch)
        }
    }

    pub fn try_mul(&self, other: &OreElement) -> Result<OreElement> {
        self.check_same(other)?;
        let mut out = LinComb::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                mul_mono_into(&self.arr, *m1, *m2, &(c1 * c2), &mut out);
            }
        }
        Ok(OreElement { arr: self.arr.clone(), terms: out })
    }

    pub fn try_add(&self, other: &OreElement) -> Result<OreElement> {
        self.check_same(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(OreElement { arr: self.arr.clone(), terms: t })
    }

    /// `u·v − v·u`.
    pub fn commutator(&self, other: &OreElement) -> Result<OreElement> {
        let uv = self.try_mul(other)?;
        let vu = other.try_mul(self)?;
        Ok(&uv - &vu)
    }

    /// `ad(self)` applied to `v`, i.e. `[self, v]`.
    pub fn ad(&self, v: &OreElement) -> OreElement {
        self.commutator(v).expect("same arrangement")
    }

    pub fn scale(&self, c: &Rational) -> OreElement {
        OreElement { arr: self.arr.clone(), terms: self.terms.scaled(c) }
    }

    pub fn pow(&self, n: u32) -> OreElement {
        let mut acc = OreElement::one(&self.arr);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_homogeneous(&self) -> bool {
        let r = self.arr.r();
        let mut it = self.terms.keys().map(|m| m.internal_degree(r));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Internal degree if homogeneous and nonzero.
    pub fn internal_degree(&self) -> Option<u32> {
        let r = self.arr.r();
        let d = self.terms.keys().next()?.internal_degree(r);
        self.is_homogeneous().then_some(d)
    }

    pub fn homogeneous_component(&self, p: u32) -> OreElement {
        let r = self.arr.r();
        let mut t = self.terms.clone();
        t.retain(|m| m.internal_degree(r) == p);
        OreElement { arr: self.arr.clone(), terms: t }
    }

    pub fn filtration_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::filtration_degree).max()
    }

    /// Largest E-exponent in the support.
    pub fn e_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.e).max()
    }

    pub fn in_s(&self) -> bool {
        self.terms.keys().all(Mono::in_s)
    }

    pub fn in_t(&self) -> bool {
        self.terms.keys().all(Mono::in_t)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn to_poly(&self) -> Result<CommPoly> {
        if !self.in_s() {
            return Err(Error::NotInS(self.to_string()));
        }
        Ok(CommPoly::from_terms(self.terms.map_keys(|m| (m.x, m.y))))
    }

    /// The action of this operator on S: x^i y^j D^k E^l acts as
    /// (multiplication by x^i y^j) ∘ D^k ∘ E^l.
    pub fn apply_to_poly(&self, p: &CommPoly) -> CommPoly {
        let mut out = LinComb::new();
        for (m, c) in &self.terms {
            let mut cur: LinComb<(u32, u32)> = if m.e == 0 {
                p.terms().clone()
            } else {
                p.terms().iter().map(|(&(i, j), v)| ((i, j), v * Rational::from(i + j).pow(m.e))).collect()
            };
            for _ in 0..m.d {
                cur = delta_s(self.arr.f_terms(), &cur);
            }
            for (&(i, j), v) in &cur {
                out.add_term((add_exp(i, m.x), add_exp(j, m.y)), v * c);
            }
        }
        CommPoly::from_terms(out)
    }

    /// τ_t on k[E]: E^n ↦ E^n − (E+t)^n.
    pub fn tau(&self, t: i64) -> Result<OreElement> {
        if !self.in_t() {
            return Err(Error::NotInT(self.to_string()));
        }
        let t = Rational::from(t);
        let mut out = LinComb::new();
        for (m, c) in &self.terms {
            for k in 0..m.e {
                let coef = Rational::binomial(m.e, k) * t.pow(m.e - k);
                out.add_term(Mono::new(0, 0, 0, k), -(c * &coef));
            }
        }
        Ok(OreElement { arr: self.arr.clone(), terms: out })
    }

    /// `Σ_{x^i y^j in f} c·Σ_{s+t+1=i} x^s·u·x^t y^j` for `which = X`, and
    /// `Σ c·Σ_{s+t+1=j} x^i y^s·u·y^t` for `which = Y`.
    pub fn nabla(u: &OreElement, which: Letter, f: &CommPoly) -> OreElement {
        let arr = &u.arr;
        let mut out = OreElement::zero(arr);
        for (&(i, j), c) in f.terms() {
            let n = match which {
                Letter::X => i,
                Letter::Y => j,
                _ => panic!("∇ is defined for x and y only"),
            };
            for s in 0..n {
                let t = n - 1 - s;
                let (left, right) = match which {
                    Letter::X => (Mono::new(s, 0, 0, 0), Mono::new(t, j, 0, 0)),
                    _ => (Mono::new(i, s, 0, 0), Mono::new(0, t, 0, 0)),
                };
                let l = OreElement::mono(arr, left, c.clone());
                let rr = OreElement::mono(arr, right, Rational::one());
                out = &out + &(&(&l * u) * &rr);
            }
        }
        out
    }

    /// Map every coefficient through `f`, keeping the support.
    pub fn map_terms(&self, mut f: impl FnMut(&Mono, &Rational) -> LinComb<Mono>) -> OreElement {
        let mut out = LinComb::new();
        for (m, c) in &self.terms {
            out.add_assign(&f(m, c));
        }
        OreElement { arr: self.arr.clone(), terms: out }
    }
}

/// The ∇-image `∇_which^u(F)` for the arrangement's F.
pub fn nabla_images(u: &OreElement, which: Letter) -> OreElement {
    let f = u.arr.f().clone();
    OreElement::nabla(u, which, &f)
}

impl Add for &OreElement {
    type Output = OreElement;
    fn add(self, rhs: &OreElement) -> OreElement {
        self.try_add(rhs).expect("arrangement mismatch")
    }
}

impl Sub for &OreElement {
    type Output = OreElement;
    fn sub(self, rhs: &OreElement) -> OreElement {
        self.check_same(rhs).expect("arrangement mismatch");
        let mut t = self.terms.clone();
        t.sub_assign(&rhs.terms);
        OreElement { arr: self.arr.clone(), terms: t }
    }
}

impl Neg for &OreElement {
    type Output = OreElement;
    fn neg(self) -> OreElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &OreElement {
    type Output = OreElement;
    fn mul(self, rhs: &OreElement) -> OreElement {
        self.try_mul(rhs).expect("arrangement mismatch")
    }
}

impl Add for OreElement {
    type Output = OreElement;
    fn add(self, rhs: OreElement) -> OreElement {
        &self + &rhs
    }
}

impl Sub for OreElement {
    type Output = OreElement;
    fn sub(self, rhs: OreElement) -> OreElement {
        &self - &rhs
    }
}

impl Mul for OreElement {
    type Output = OreElement;
    fn mul(self, rhs: OreElement) -> OreElement {
        &self * &rhs
    }
}

impl Neg for OreElement {
    type Output = OreElement;
    fn neg(self) -> OreElement {
        -&self
    }
}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct T<'a>(&'a Mono, &'a Rational);
        impl fmt::Display for T<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let m = self.0;
                fmt_monomial(f, self.1, &[("x", m.x), ("y", m.y), ("D", m.d), ("E", m.e)])
            }
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.reverse();
        fmt_sum(f, items.into_iter().map(|(m, c)| T(m, c).to_string()))
    }
}

/// F̃·∂_y on a dense integer form of degree g indexed by the x-exponent,
/// or `None` on overflow.
fn dense_d(f: &[i128], g: usize, p: &[i128]) -> Option<Vec<i128>> {
    let r = f.len() - 2;
    let mut out = vec![0i128; g + r + 1];
    for (i, &c) in p.iter().enumerate() {
        let j = (g - i) as i128;
        if j == 0 || c == 0 {
            continue;
        }
        let cj = c.checked_mul(j)?;
        for (a, &fc) in f.iter().enumerate() {
            if fc != 0 {
                out[i + a] = out[i + a].checked_add(cj.checked_mul(fc)?)?;
            }
        }
    }
    Some(out)
}

fn to_i128(c: &Rational) -> Option<i128> {
    c.is_integer().then(|| c.numer().try_into().ok()).flatten()
}

/// Pairs (u, v) of PBW monomials of exponent sum ≤ `max_sum` for which
/// (uv)·s ≠ u·(v·s) for some monomial s ∈ S of degree ≤ `max_deg`.
///
/// With F = F̃/L and D̃ = F̃·∂_y, both sides are multiplied by L^K, K the
/// total D-degree, and compared as integer forms indexed by the
/// x-exponent, using x^a y^b D^c E^e·p = g^e x^a y^b D^c(p) for p of degree
/// g. Overflow or a non-integral coefficient falls back to exact rational
/// evaluation of that case.
pub fn action_mismatches(arr: &Arc<Arrangement>, max_sum: u32, max_deg: u32) -> Vec<(Mono, Mono)> {
    action_mismatches_with(arr, max_sum, max_deg, |u, v| {
        &OreElement::mono(arr, *u, Rational::one()) * &OreElement::mono(arr, *v, Rational::one())
    })
}

/// [`action_mismatches`] for an arbitrary product rule on monomials.
pub fn action_mismatches_with(
    arr: &Arc<Arrangement>,
    max_sum: u32,
    max_deg: u32,
    mul: impl Fn(&Mono, &Mono) -> OreElement,
) -> Vec<(Mono, Mono)> {
    let r = arr.r() as usize;
    let lcm = arr.f_terms().iter().fold(num_bigint::BigInt::one(), |acc, (_, _, c)| num_integer::Integer::lcm(&acc, &c.denom()));
    let l = Rational::from(lcm);
    let mut f = vec![0i128; r + 2];
    for (i, _, c) in arr.f_terms() {
        f[*i as usize] = to_i128(&(c * &l)).expect("integral");
    }
    let monos = Mono::all_up_to(max_sum);
    let kmax = 2 * max_sum as usize;
    // powers[g][i][k] = D̃^k(x^i y^{g−i})
    let powers: Vec<Vec<Vec<Option<Vec<i128>>>>> = (0..=max_deg as usize)
        .map(|g| {
            (0..=g)
                .map(|i| {
                    let mut p = vec![0i128; g + 1];
                    p[i] = 1;
                    let mut out = vec![Some(p)];
                    for k in 0..kmax {
                        let next = out[k].as_ref().and_then(|p| dense_d(&f, g + k * r, p));
                        out.push(next);
                    }
                    out
                })
                .collect()
        })
        .collect();
    let exact = |u: &Mono, v: &Mono, uv: &OreElement, s: &CommPoly| {
        let mu = OreElement::mono(arr, *u, Rational::one());
        let mv = OreElement::mono(arr, *v, Rational::one());
        uv.apply_to_poly(s) == mu.apply_to_poly(&mv.apply_to_poly(s))
    };
    let mut bad = vec![false; monos.len() * monos.len()];
    for (vi, v) in monos.iter().enumerate() {
        let products: Vec<OreElement> = monos.iter().map(|u| mul(u, v)).collect();
        // c_m·L^{K − deg_D m}, integral when the rewriting stays integral
        let scaled: Vec<Option<Vec<(Mono, i128)>>> = products
            .iter()
            .zip(&monos)
            .map(|(p, u)| {
                let k = u.d + v.d;
                p.terms().iter().map(|(m, c)| to_i128(&(c * &l.pow(k - m.d))).map(|c| (*m, c))).collect()
            })
            .collect();
        for (g, row) in powers.iter().enumerate() {
            let gv = g + v.x as usize + v.y as usize + r * v.d as usize;
            for (i, cell) in row.iter().enumerate() {
                let s = CommPoly::monomial(i as u32, (g - i) as u32, Rational::one());
                // D̃^c(L^{v.d}·v·s) for every c
                let w = cell[v.d as usize].as_ref().and_then(|p| {
                    let sv = (g as i128).checked_pow(v.e)?;
                    let mut w = vec![0i128; gv + 1];
                    for (j, &c) in p.iter().enumerate() {
                        w[j + v.x as usize] = c.checked_mul(sv)?;
                    }
                    Some(w)
                });
                let mut dw = vec![w];
                for c in 0..max_sum as usize {
                    let next = dw[c].as_ref().and_then(|p| dense_d(&f, gv + c * r, p));
                    dw.push(next);
                }
                for (ui, u) in monos.iter().enumerate() {
                    let slot = ui * monos.len() + vi;
                    if bad[slot] {
                        continue;
                    }
                    let fast = || -> Option<bool> {
                        let total = gv + u.x as usize + u.y as usize + r * u.d as usize;
                        let mut lhs = vec![0i128; total + 1];
                        for (m, c) in scaled[ui].as_ref()? {
                            let k = c.checked_mul((g as i128).checked_pow(m.e)?)?;
                            for (j, &pc) in cell[m.d as usize].as_ref()?.iter().enumerate() {
                                if pc != 0 {
                                    let t = &mut lhs[j + m.x as usize];
                                    *t = t.checked_add(k.checked_mul(pc)?)?;
                                }
                            }
                        }
                        let su = (gv as i128).checked_pow(u.e)?;
                        let src = dw[u.d as usize].as_ref()?;
                        for (j, &lv) in lhs.iter().enumerate() {
                            let rv = match j.checked_sub(u.x as usize).and_then(|k| src.get(k)) {
                                Some(&c) => c.checked_mul(su)?,
                                None => 0,
                            };
                            if lv != rv {
                                return Some(false);
                            }
                        }
                        Some(true)
                    };
                    let ok = match fast() {
                        Some(ok) => ok,
                        None => exact(u, v, &products[ui], &s),
                    };
                    if !ok {
                        bad[slot] = true;
                    }
                }
            }
        }
    }
    let n = monos.len();
    bad.iter().enumerate().filter(|(_, b)| **b).map(|(k, _)| (monos[k / n], monos[k % n])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr() -> Arc<Arrangement> {
        Arrangement::example(3).unwrap()
    }

    #[test]
    fn action_oracle_small() {
        let a = arr();
        assert!(action_mismatches(&a, 3, 4).is_empty());
    }

    #[test]
    fn action_oracle_catches_dropped_term() {
        let a = arr();
        let naive =
            |u: &Mono, v: &Mono| OreElement::mono(&a, Mono::new(u.x + v.x, u.y + v.y, u.d + v.d, u.e + v.e), Rational::one());
        let bad = action_mismatches_with(&a, 2, 3, naive);
        assert!(bad.contains(&(Mono::new(0, 0, 1, 0), Mono::new(0, 1, 0, 0))));
        assert!(!bad.contains(&(Mono::new(1, 0, 0, 0), Mono::new(0, 1, 0, 0))));
    }

    #[test]
    fn defining_relations() {
        let a = arr();
        let (x, y, d, e) = (OreElement::x(&a), OreElement::y(&a), OreElement::d(&a), OreElement::e(&a));
        let f = OreElement::from_poly(&a, a.f());
        assert!(y.commutator(&x).unwrap().is_zero());
        assert!(d.commutator(&x).unwrap().is_zero());
        assert_eq!(d.commutator(&y).unwrap(), f);
        assert_eq!(e.commutator(&x).unwrap(), x);
        assert_eq!(e.commutator(&y).unwrap(), y);
        assert_eq!(e.commutator(&d).unwrap(), d.scale(&Rational::from(3)));
        assert_eq!(&d * &y, &(&y * &d) + &f);
    }

    #[test]
    fn d_past_y_squared() {
        let a = arr();
        let y = OreElement::y(&a);
        let d = OreElement::d(&a);
        let f = OreElement::from_poly(&a, a.f());
        let lhs = &d * &(&y * &y);
        let rhs = &(&(&y * &y) * &d) + &(&y * &f).scale(&Rational::from(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_values() {
        let a = arr();
        let e = OreElement::e(&a);
        assert_eq!(e.tau(1).unwrap(), OreElement::scalar(&a, Rational::from(-1)));
        assert!(OreElement::one(&a).tau(3).unwrap().is_zero());
        let e2 = e.pow(2);
        let expect = OreElement::from_e_poly(&a, &[Rational::from(-4), Rational::from(-4)]);
        assert_eq!(e2.tau(2).unwrap(), expect);
        assert!(matches!(OreElement::x(&a).tau(1), Err(Error::NotInT(_))));
    }

    #[test]
    fn nabla_with_unit_gives_derivatives() {
        let a = arr();
        let one = OreElement::one(&a);
        assert_eq!(nabla_images(&one, Letter::X), OreElement::from_poly(&a, &a.f_x()));
        assert_eq!(nabla_images(&one, Letter::Y), OreElement::from_poly(&a, &a.f_y()));
    }

    #[test]
    fn render() {
        let a = arr();
        let u = &OreElement::mono(&a, Mono::new(2, 1, 1, 2), Rational::new(3, 2)) - &OreElement::e(&a);
        assert_eq!(u.to_string(), "3/2*x^2*y*D*E^2 - E");
    }
}
