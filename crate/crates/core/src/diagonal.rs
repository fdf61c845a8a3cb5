//! The diagonal Δ: 𝒫 → 𝒫⊗_A𝒫 lifting A ≅ A⊗_AA, and the cup product it
//! induces on A⊗ΛV*.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::hochschild::{is_cocycle, Cochain};
use crate::lincomb::LinComb;
use crate::ore::{mul_mono_into, Letter, Mono, OreElement};
use crate::rational::Rational;
use crate::resolution::{generator_d, nabla_chain, BimoduleChain};
use crate::wedge::Wedge;

/// A basis tensor `a|w₁|b ⊗ 1|w₂|c`, stored as `(a, w₁, b, w₂, c)`.
pub type PairTensor = (Mono, Wedge, Mono, Wedge, Mono);

/// An element of 𝒫⊗_A𝒫.
#[derive(Clone, PartialEq, Eq)]
pub struct PairChain {
    arr: Arc<Arrangement>,
    terms: LinComb<PairTensor>,
}

impl fmt::Debug for PairChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PairChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, w1, b, w2, c), k)| format!("({k})*{a}|{w1}|{b}⊗1|{w2}|{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PairChain {
    pub fn zero(arr: &Arc<Arrangement>) -> Self {
        PairChain { arr: arr.clone(), terms: LinComb::new() }
    }

    pub fn terms(&self) -> &LinComb<PairTensor> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_term(&mut self, t: PairTensor, c: Rational) {
        self.terms.add_term(t, c);
    }

    /// The terms of bidegree (p, q).
    pub fn component(&self, p: usize, q: usize) -> PairChain {
        let mut out = PairChain::zero(&self.arr);
        for (t, c) in &self.terms {
            if t.1.len() == p && t.3.len() == q {
                out.add_term(*t, c.clone());
            }
        }
        out
    }

    /// `x ⊗ y` for `x = Σ a|w₁|b` and `y = Σ b'|w₂|c`, multiplying the
    /// middle factors.
    pub fn tensor(x: &BimoduleChain, y: &BimoduleChain) -> PairChain {
        let arr = x.arrangement();
        let mut out = PairChain::zero(arr);
        let mut buf = LinComb::new();
        for ((a, w1, b), k1) in x.terms() {
            for ((b2, w2, c), k2) in y.terms() {
                mul_mono_into(arr, *b, *b2, &(k1 * k2), &mut buf);
                while let Some((m, k)) = buf.pop_first() {
                    out.add_term((*a, *w1, m, *w2, *c), k);
                }
            }
        }
        out
    }

    fn add_assign(&mut self, other: &PairChain) {
        self.terms.add_assign(&other.terms);
    }

    /// `u·self·v` on the outer factors.
    pub fn outer_mul(&self, u: &Mono, v: &Mono) -> PairChain {
        let mut out = PairChain::zero(&self.arr);
        let mut lb = LinComb::new();
        let mut rb = LinComb::new();
        for ((a, w1, b, w2, c), k) in &self.terms {
            mul_mono_into(&self.arr, *u, *a, k, &mut lb);
            mul_mono_into(&self.arr, *c, *v, &Rational::one(), &mut rb);
            for (l, kl) in &lb {
                for (r, kr) in &rb {
                    out.add_term((*l, *w1, *b, *w2, *r), kl * kr);
                }
            }
            lb = LinComb::new();
            rb = LinComb::new();
        }
        out
    }
}

/// The differential `d⊗1 + (−1)^p 1⊗d` of 𝒫⊗_A𝒫; degree-0 factors are cycles.
pub fn pair_d(c: &PairChain) -> PairChain {
    let arr = &c.arr;
    let mut out = PairChain::zero(arr);
    let mut lb = LinComb::new();
    let mut rb = LinComb::new();
    for ((a, w1, b, w2, e), k) in &c.terms {
        if !w1.is_empty() {
            for ((l, w, r), k2) in generator_d(arr, *w1).terms() {
                mul_mono_into(arr, *a, *l, &(k * k2), &mut lb);
                mul_mono_into(arr, *r, *b, &Rational::one(), &mut rb);
                for (ml, kl) in &lb {
                    for (mr, kr) in &rb {
                        out.add_term((*ml, *w, *mr, *w2, *e), kl * kr);
                    }
                }
                lb = LinComb::new();
                rb = LinComb::new();
            }
        }
        if !w2.is_empty() {
            let sign = if w1.len() % 2 == 0 { k.clone() } else { -k };
            for ((l, w, r), k2) in generator_d(arr, *w2).terms() {
                mul_mono_into(arr, *b, *l, &(&sign * k2), &mut lb);
                mul_mono_into(arr, *r, *e, &Rational::one(), &mut rb);
                for (ml, kl) in &lb {
                    for (mr, kr) in &rb {
                        out.add_term((*a, *w1, *ml, *w, *mr), kl * kr);
                    }
                }
                lb = LinComb::new();
                rb = LinComb::new();
            }
        }
    }
    out
}

/// Δ_K(1|w|1): the unshuffle sum `Σ ±1|w_I|1 ⊗ 1|w_J|1` over splittings.
pub fn delta_k(arr: &Arc<Arrangement>, w: Wedge) -> PairChain {
    let mut out = PairChain::zero(arr);
    let bits = w.bits();
    let mut sub = bits;
    loop {
        let wi = Wedge::from_bits(sub);
        let wj = Wedge::from_bits(bits & !sub);
        let (s, _) = wi.wedge(wj).expect("disjoint");
        out.add_term((Mono::ONE, wi, Mono::ONE, wj, Mono::ONE), Rational::from(s));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    out
}

/// `f⁽¹⁾|f⁽²⁾|f⁽³⁾ ⊗ 1|f⁽⁴⁾|f⁽⁵⁾`: ∇(F) followed by ∇ on the right factor.
pub fn double_nabla(arr: &Arc<Arrangement>) -> Vec<(Mono, Letter, Mono, Letter, Mono, Rational)> {
    let mut out = Vec::new();
    for which in [Letter::X, Letter::Y] {
        for ((f1, w, f3), c) in nabla_chain(arr, which, Wedge::letter(which)).terms() {
            let f2 = w.letters()[0];
            // ∇ of the monomial f3, splitting off one letter x or y.
            for (k, l) in f3.word().iter().enumerate() {
                let word = f3.word();
                let pre = Mono::from_sorted_word(&word[..k]);
                let suf = Mono::from_sorted_word(&word[k + 1..]);
                out.push((*f1, f2, pre, *l, suf, c.clone()));
            }
        }
    }
    out
}

/// `−f⁽¹⁾|f⁽²⁾∧v|f⁽³⁾⊗1|f⁽⁴⁾|f⁽⁵⁾ + f⁽¹⁾|f⁽²⁾|f⁽³⁾⊗1|f⁽⁴⁾∧v|f⁽⁵⁾`.
fn appended(arr: &Arc<Arrangement>, v: Letter) -> PairChain {
    let wv = Wedge::letter(v);
    let mut out = PairChain::zero(arr);
    for (f1, f2, f3, f4, f5, c) in double_nabla(arr) {
        if let Some((s1, w1)) = Wedge::letter(f2).wedge(wv) {
            out.add_term((f1, w1, f3, Wedge::letter(f4), f5), -&c * Rational::from(s1));
        }
        if let Some((s2, w2)) = Wedge::letter(f4).wedge(wv) {
            out.add_term((f1, Wedge::letter(f2), f3, w2, f5), c * Rational::from(s2));
        }
    }
    out
}

fn append_letters(w: Wedge, ls: &[Letter]) -> Option<(i64, Wedge)> {
    let mut sign = 1;
    let mut cur = w;
    for l in ls {
        let (s, n) = cur.wedge(Wedge::letter(*l))?;
        sign *= s;
        cur = n;
    }
    Some((sign, cur))
}

/// Δ_N on a free generator. On x∧y∧D it has the same shape
/// as on y∧D∧E; zero there would break the chain map property.
pub fn delta_n(arr: &Arc<Arrangement>, w: Wedge) -> PairChain {
    use Letter::*;
    let mut out = PairChain::zero(arr);
    match w.letters().as_slice() {
        [Y, D] => {
            for (f1, f2, f3, f4, f5, c) in double_nabla(arr) {
                out.add_term((f1, Wedge::letter(f2), f3, Wedge::letter(f4), f5), c);
            }
        }
        [X, Y, D] => out = appended(arr, X),
        [Y, D, E] => out = appended(arr, E),
        [X, Y, D, E] => {
            let shapes: [(&[Letter], &[Letter], i64); 4] =
                [(&[X, E], &[], 1), (&[X], &[E], -1), (&[E], &[X], 1), (&[], &[X, E], 1)];
            for (f1, f2, f3, f4, f5, c) in double_nabla(arr) {
                for (l1, l2, sign) in shapes {
                    if let (Some((s1, w1)), Some((s2, w2))) =
                        (append_letters(Wedge::letter(f2), l1), append_letters(Wedge::letter(f4), l2))
                    {
                        out.add_term((f1, w1, f3, w2, f5), &c * Rational::from(sign * s1 * s2));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Δ(1|w|1) = Δ_K + Δ_N.
pub fn delta_generator(arr: &Arc<Arrangement>, w: Wedge) -> Result<PairChain> {
    let mut out = delta_k(arr, w);
    out.add_assign(&delta_n(arr, w));
    Ok(out)
}

/// The (p, q)-component of Δ on a generator.
pub fn diag_delta(arr: &Arc<Arrangement>, p: usize, q: usize, w: Wedge) -> Result<PairChain> {
    if p + q != w.len() {
        return Err(Error::DegreeMismatch { expected: p + q, got: w.len() });
    }
    Ok(delta_generator(arr, w)?.component(p, q))
}

/// Δ extended A-bilinearly.
pub fn delta(c: &BimoduleChain) -> Result<PairChain> {
    let arr = c.arrangement();
    let mut out = PairChain::zero(arr);
    for ((l, w, r), k) in c.terms() {
        let img = delta_generator(arr, *w)?.outer_mul(l, r);
        out.terms.add_scaled(&img.terms, k);
    }
    Ok(out)
}

/// `pair_d(Δ(1|w|1)) − Δ(d(1|w|1))`.
pub fn delta_defect(arr: &Arc<Arrangement>, w: Wedge) -> Result<PairChain> {
    let lhs = pair_d(&delta_generator(arr, w)?);
    let rhs = if w.is_empty() { PairChain::zero(arr) } else { delta(&generator_d(arr, w))? };
    let mut out = lhs;
    out.terms.sub_assign(&rhs.terms);
    Ok(out)
}

/// α ⌣ β = (α⊗β)∘Δ_{p,q}: on a generator, `Σ k·a·α(w₁)·b·β(w₂)·c`.
pub fn cup(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    let arr = alpha.arrangement();
    if alpha.is_zero() || beta.is_zero() {
        return Ok(Cochain::zero(arr));
    }
    let p = alpha.degree().ok_or(Error::DegreeMismatch { expected: 0, got: 0 })?;
    let q = beta.degree().ok_or(Error::DegreeMismatch { expected: 0, got: 0 })?;
    let mut out = Cochain::zero(arr);
    for g in Wedge::all_of_len(p + q) {
        let comp = diag_delta(arr, p, q, g)?;
        let mut val = OreElement::zero(arr);
        for ((a, w1, b, w2, c), k) in comp.terms() {
            let av = alpha.component(*w1);
            let bv = beta.component(*w2);
            if av.is_zero() || bv.is_zero() {
                continue;
            }
            let t = &(&(&OreElement::mono(arr, *a, k.clone()) * &av) * &OreElement::mono(arr, *b, Rational::one()))
                * &(&bv * &OreElement::mono(arr, *c, Rational::one()));
            val = &val + &t;
        }
        out.add_component(g, &val);
    }
    Ok(out)
}

/// [`cup`] that first insists both arguments are cocycles.
pub fn cup_strict(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    if !is_cocycle(alpha) || !is_cocycle(beta) {
        return Err(Error::NotCocycle);
    }
    cup(alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::{omega2, omega3};
    use Letter::*;

    #[test]
    fn delta_is_chain_map() {
        for n in 3..=4 {
            let a = Arrangement::example(n).unwrap();
            for p in 1..=4 {
                for w in Wedge::all_of_len(p) {
                    let r = delta_defect(&a, w).unwrap();
                    assert!(r.is_zero(), "{w}: {r}");
                }
            }
        }
    }

    #[test]
    fn delta_xy() {
        let a = Arrangement::example(3).unwrap();
        let got = diag_delta(&a, 1, 1, Wedge::of(&[X, Y])).unwrap();
        let mut want = PairChain::zero(&a);
        want.add_term((Mono::ONE, Wedge::letter(X), Mono::ONE, Wedge::letter(Y), Mono::ONE), Rational::one());
        want.add_term((Mono::ONE, Wedge::letter(Y), Mono::ONE, Wedge::letter(X), Mono::ONE), -Rational::one());
        assert_eq!(got, want);
        assert!(delta_n(&a, Wedge::of(&[X, Y, E])).is_zero());
        assert!(delta_n(&a, Wedge::of(&[X, D, E])).is_zero());
    }

    #[test]
    fn e_cup_omega2() {
        let a = Arrangement::example(3).unwrap();
        let e = Cochain::single(Wedge::letter(E), &OreElement::one(&a));
        assert_eq!(cup(&e, &omega2(&a)).unwrap(), omega3(&a));
    }
}
