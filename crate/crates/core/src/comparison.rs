//! The normalized bar resolution BA and the comparison morphisms
//! φ: 𝒫 → BA and ψ: BA → 𝒫 over the identity of A.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ore::{mul_mono_into, Letter, Mono, OreElement};
use crate::rational::Rational;
use crate::resolution::{nabla_f, BimoduleChain};
use crate::rewrite::normalize;
use crate::wedge::Wedge;

/// An element of the normalized bar resolution: sums of `a₀|a₁|…|a_p|a_{p+1}`
/// with PBW monomials in every slot. Terms with a scalar interior slot vanish.
#[derive(Clone, PartialEq, Eq)]
pub struct BarChain {
    arr: Arc<Arrangement>,
    terms: LinComb<Vec<Mono>>,
}

impl fmt::Debug for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let s: Vec<String> = t.iter().map(|m| m.to_string()).collect();
                format!("({c})*{}", s.join("|"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn interior_scalar(t: &[Mono]) -> bool {
    t.len() > 2 && t[1..t.len() - 1].iter().any(|m| m.is_one())
}

impl BarChain {
    pub fn zero(arr: &Arc<Arrangement>) -> Self {
        BarChain { arr: arr.clone(), terms: LinComb::new() }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn terms(&self) -> &LinComb<Vec<Mono>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Add `c·t`, dropping it if an interior slot is scalar.
    pub fn add_term(&mut self, t: Vec<Mono>, c: Rational) {
        if !interior_scalar(&t) {
            self.terms.add_term(t, c);
        }
    }

    /// `c·s₀|s₁|…` for arbitrary elements, expanded multilinearly.
    pub fn add_elements(&mut self, slots: &[OreElement], c: &Rational) {
        let mut partial: Vec<(Vec<Mono>, Rational)> = vec![(Vec::new(), c.clone())];
        for s in slots {
            let mut next = Vec::new();
            for (t, k) in &partial {
                for (m, v) in s.terms() {
                    let mut t2 = t.clone();
                    t2.push(*m);
                    next.push((t2, k * v));
                }
            }
            partial = next;
        }
        for (t, k) in partial {
            self.add_term(t, k);
        }
    }

    pub fn from_elements(slots: &[OreElement]) -> Self {
        let mut b = BarChain::zero(slots[0].arrangement());
        b.add_elements(slots, &Rational::one());
        b
    }

    /// `1|m₁|…|m_p|1` for monomials.
    pub fn elementary(arr: &Arc<Arrangement>, interior: &[Mono]) -> Self {
        let mut t = vec![Mono::ONE];
        t.extend_from_slice(interior);
        t.push(Mono::ONE);
        let mut b = BarChain::zero(arr);
        b.add_term(t, Rational::one());
        b
    }

    /// The homological degree shared by all terms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|t| t.len() - 2);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BarChain { arr: self.arr.clone(), terms: self.terms.scaled(c) }
    }

    /// Multiply the outer slots: `a·(a₀|…|a_{p+1})·b`.
    pub fn outer_mul(&self, a: &Mono, b: &Mono) -> Self {
        let mut out = BarChain::zero(&self.arr);
        let mut lb = LinComb::new();
        let mut rb = LinComb::new();
        for (t, c) in &self.terms {
            let n = t.len();
            mul_mono_into(&self.arr, *a, t[0], c, &mut lb);
            mul_mono_into(&self.arr, t[n - 1], *b, &Rational::one(), &mut rb);
            for (l, kl) in &lb {
                for (r, kr) in &rb {
                    let mut t2 = t.clone();
                    t2[0] = *l;
                    t2[n - 1] = *r;
                    out.add_term(t2, kl * kr);
                }
            }
            lb = LinComb::new();
            rb = LinComb::new();
        }
        out
    }
}

impl Add for &BarChain {
    type Output = BarChain;
    fn add(self, rhs: &BarChain) -> BarChain {
        let mut t = self.terms.clone();
        t.add_assign(&rhs.terms);
        BarChain { arr: self.arr.clone(), terms: t }
    }
}

impl Sub for &BarChain {
    type Output = BarChain;
    fn sub(self, rhs: &BarChain) -> BarChain {
        let mut t = self.terms.clone();
        t.sub_assign(&rhs.terms);
        BarChain { arr: self.arr.clone(), terms: t }
    }
}

/// The bar differential `Σ (−1)^i a₀|…|a_i a_{i+1}|…`, for degree ≥ 1.
pub fn bar_d(c: &BarChain) -> BarChain {
    let mut out = BarChain::zero(&c.arr);
    let mut buf = LinComb::new();
    for (t, k) in &c.terms {
        for i in 0..t.len() - 1 {
            let sign = if i % 2 == 0 { k.clone() } else { -k };
            mul_mono_into(&c.arr, t[i], t[i + 1], &sign, &mut buf);
            while let Some((m, v)) = buf.pop_first() {
                let mut t2 = Vec::with_capacity(t.len() - 1);
                t2.extend_from_slice(&t[..i]);
                t2.push(m);
                t2.extend_from_slice(&t[i + 2..]);
                out.add_term(t2, v);
            }
        }
    }
    out
}

/// Sign of the permutation taking `0..n` to `perm`.
fn perm_sign(perm: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// φ_K(1|v₁∧…∧v_p|1) = Σ_π sgn(π)·1|v_π(1)|…|v_π(p)|1.
pub fn phi_k(arr: &Arc<Arrangement>, w: Wedge) -> BarChain {
    let ls = w.letters();
    let mut out = BarChain::zero(arr);
    for perm in permutations(ls.len()) {
        let interior: Vec<Mono> = perm.iter().map(|&i| ls[i].mono()).collect();
        let mut t = vec![Mono::ONE];
        t.extend(interior);
        t.push(Mono::ONE);
        out.add_term(t, Rational::from(perm_sign(&perm)));
    }
    out
}

/// The Sweedler terms `c·(q⁽¹⁾, q̄⁽²⁾, q⁽³⁾)` of ∇(F).
pub fn nabla_f_terms(arr: &Arc<Arrangement>) -> Vec<(Mono, Letter, Mono, Rational)> {
    nabla_f(arr).terms().iter().map(|((l, w, r), c)| (*l, w.letters()[0], *r, c.clone())).collect()
}

/// φ_N on a free generator. Terms of the form `F|1|…` have a scalar
/// interior slot and vanish in the normalized bar resolution.
pub fn phi_n(arr: &Arc<Arrangement>, w: Wedge) -> BarChain {
    use Letter::*;
    let mut out = BarChain::zero(arr);
    let one = Mono::ONE;
    let extra = match w.letters().as_slice() {
        [Y, D] => None,
        [X, Y, D] => Some(X),
        [Y, D, E] => Some(E),
        _ => return out,
    };
    for (q1, q2, q3, c) in nabla_f_terms(arr) {
        let q2 = q2.mono();
        match extra {
            None => out.add_term(vec![q1, q2, q3, one], c),
            Some(v) => {
                let v = v.mono();
                out.add_term(vec![q1, q2, q3, v, one], c.clone());
                out.add_term(vec![q1, q2, v, q3, one], -&c);
                out.add_term(vec![q1, v, q2, q3, one], c);
            }
        }
    }
    out
}

/// φ(1|w|1) = φ_K + φ_N for |w| ≤ 3.
pub fn phi_generator(arr: &Arc<Arrangement>, w: Wedge) -> Result<BarChain> {
    if w.len() > 3 {
        return Err(Error::UnsupportedDegree(format!("φ_{}", w.len())));
    }
    Ok(&phi_k(arr, w) + &phi_n(arr, w))
}

/// φ_p extended A-bilinearly.
pub fn phi(p: usize, c: &BimoduleChain) -> Result<BarChain> {
    if p > 3 {
        return Err(Error::UnsupportedDegree(format!("φ_{p}")));
    }
    let arr = c.arrangement();
    let mut out = BarChain::zero(arr);
    for ((l, w, r), k) in c.terms() {
        if w.len() != p {
            return Err(Error::DegreeMismatch { expected: p, got: w.len() });
        }
        let img = phi_generator(arr, *w)?.outer_mul(l, r).scale(k);
        out = &out + &img;
    }
    Ok(out)
}

/// ψ₁(1|m|1) = Σ prefix|letter|suffix over the PBW word of `m`.
pub fn psi1(arr: &Arc<Arrangement>, m: &Mono) -> BimoduleChain {
    let word = m.word();
    let mut out = BimoduleChain::zero(arr);
    for (k, l) in word.iter().enumerate() {
        let pre = Mono::from_sorted_word(&word[..k]);
        let suf = Mono::from_sorted_word(&word[k + 1..]);
        out.add_term((pre, Wedge::letter(*l), suf), Rational::one());
    }
    out
}

fn word_element(arr: &Arc<Arrangement>, w: &[Letter]) -> OreElement {
    normalize(arr, LinComb::single(w.to_vec(), Rational::one()))
}

/// The lower-order part `c` of the relation `ba = ab + c` for letters a < b.
fn relation_tail(arr: &Arrangement, b: Letter, a: Letter) -> Vec<(Vec<Letter>, Rational)> {
    use Letter::*;
    match (b, a) {
        (Y, X) | (D, X) => vec![],
        (D, Y) => arr.f_terms().iter().map(|(i, j, c)| (Mono::new(*i, *j, 0, 0).word(), c.clone())).collect(),
        (E, X) => vec![(vec![X], Rational::one())],
        (E, Y) => vec![(vec![Y], Rational::one())],
        (E, D) => vec![(vec![D], Rational::from(arr.r()))],
        _ => unreachable!("pair is in order"),
    }
}

/// ψ₂(1|u|v|1), read off from rewriting the word uv to PBW form: every
/// step `P·ba·S → P·(ab + c)·S` contributes `−P|a∧b|S`.
pub fn psi2(arr: &Arc<Arrangement>, u: &Mono, v: &Mono) -> BimoduleChain {
    let mut out = BimoduleChain::zero(arr);
    if u.is_one() || v.is_one() {
        return out;
    }
    let mut w = u.word();
    w.extend(v.word());
    let mut pending = LinComb::single(w, Rational::one());
    while let Some((w, c)) = pending.pop_first() {
        let Some(i) = w.windows(2).position(|p| p[0] > p[1]) else { continue };
        let (b, a) = (w[i], w[i + 1]);
        let pre = Mono::from_sorted_word(&w[..i]);
        let suf = word_element(arr, &w[i + 2..]);
        let gen = Wedge::of(&[a, b]);
        for (m, k) in suf.terms() {
            out.add_term((pre, gen, *m), -(&c * k));
        }
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        pending.add_term(swapped, c.clone());
        for (mid, k) in relation_tail(arr, b, a) {
            let mut nw = w[..i].to_vec();
            nw.extend(mid);
            nw.extend_from_slice(&w[i + 2..]);
            pending.add_term(nw, &c * &k);
        }
    }
    out
}

fn wedge_terms(c: &BimoduleChain, f: impl Fn(Wedge) -> Option<(i64, Wedge)>) -> BimoduleChain {
    let mut out = BimoduleChain::zero(c.arrangement());
    for ((l, w, r), k) in c.terms() {
        if let Some((s, nw)) = f(*w) {
            out.add_term((*l, nw, *r), k * Rational::from(s));
        }
    }
    out
}

/// ψ₂(1|u|v|1) by the case table of special shapes. Shapes outside the
/// table are reported as [`Error::UncoveredShape`].
pub fn psi2_table(arr: &Arc<Arrangement>, u: &Mono, v: &Mono) -> Result<BimoduleChain> {
    use Letter::*;
    let zero = BimoduleChain::zero(arr);
    if u.is_one() || v.is_one() {
        return Ok(zero);
    }
    let r = arr.r();
    let y = Y.mono();
    let wy = Wedge::letter(Y);
    if *u == Mono::new(0, 1, 1, 0) && *v == y {
        let mut out = BimoduleChain::tensor(arr, y, Wedge::of(&[Y, D]), Mono::ONE, -Rational::one());
        out = &out - &wedge_terms(&nabla_f(arr), |w| w.wedge(wy));
        return Ok(out);
    }
    if *u == Mono::new(0, r + 1, 0, 1) && *v == y {
        return Ok(BimoduleChain::tensor(arr, Mono::new(0, r + 1, 0, 0), Wedge::of(&[Y, E]), Mono::ONE, -Rational::one()));
    }
    if *u == E.mono() {
        let we = Wedge::letter(E);
        return Ok(-wedge_terms(&psi1(arr, v), |w| w.wedge(we)));
    }
    let (uw, vw) = (u.word(), v.word());
    if uw.len() == 1 && vw.len() == 1 && uw[0] > vw[0] {
        return Ok(BimoduleChain::tensor(arr, Mono::ONE, Wedge::of(&[vw[0], uw[0]]), Mono::ONE, -Rational::one()));
    }
    if *v == X.mono() {
        let wx = Wedge::letter(X);
        return Ok(-wedge_terms(&psi1(arr, u), |w| wx.wedge(w)));
    }
    let mut cat = uw.clone();
    cat.extend(vw);
    if cat.windows(2).all(|p| p[0] <= p[1]) {
        return Ok(zero);
    }
    Err(Error::UncoveredShape(format!("1|{u}|{v}|1")))
}

/// ψ_p for p ≤ 2, extended A-bilinearly.
pub fn psi(c: &BarChain) -> Result<BimoduleChain> {
    let arr = c.arrangement();
    let mut out = BimoduleChain::zero(arr);
    for (t, k) in c.terms() {
        let n = t.len();
        let (a, b) = (t[0], t[n - 1]);
        let core = match n - 2 {
            0 => BimoduleChain::generator(arr, Wedge::EMPTY),
            1 => psi1(arr, &t[1]),
            2 => psi2(arr, &t[1], &t[2]),
            p => return Err(Error::UnsupportedDegree(format!("ψ_{p}"))),
        };
        let img = core.left_mul(&OreElement::mono(arr, a, k.clone())).right_mul(&OreElement::mono(arr, b, Rational::one()));
        out = &out + &img;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::d;
    use Letter::*;

    fn ex() -> Arc<Arrangement> {
        Arrangement::example(3).unwrap()
    }

    #[test]
    fn phi_low_degrees() {
        let a = ex();
        let x = BarChain::elementary(&a, &[X.mono()]);
        assert_eq!(phi_generator(&a, Wedge::letter(X)).unwrap(), x);
        let want = &BarChain::elementary(&a, &[X.mono(), Y.mono()]) - &BarChain::elementary(&a, &[Y.mono(), X.mono()]);
        assert_eq!(phi_generator(&a, Wedge::of(&[X, Y])).unwrap(), want);
        assert!(phi_generator(&a, Wedge::TOP).is_err());
    }

    #[test]
    fn phi_is_chain_map() {
        let a = ex();
        for p in 2..=3 {
            for w in Wedge::all_of_len(p) {
                let lhs = bar_d(&phi_generator(&a, w).unwrap());
                let rhs = phi(p - 1, &d(p, &BimoduleChain::generator(&a, w)).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{w}");
            }
        }
    }

    #[test]
    fn psi2_examples() {
        let a = ex();
        assert!(psi2(&a, &X.mono(), &Y.mono()).is_zero());
        let want = BimoduleChain::tensor(&a, Mono::ONE, Wedge::of(&[X, D]), Mono::ONE, -Rational::one());
        assert_eq!(psi2(&a, &D.mono(), &X.mono()), want);
        assert_eq!(psi2_table(&a, &D.mono(), &X.mono()).unwrap(), want);
    }
}
