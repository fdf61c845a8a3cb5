//! Algebra endomorphisms and derivations of A, given by generator images.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::ore::{Letter, Mono, OreElement};
use crate::poly::CommPoly;
use crate::rational::Rational;

/// `p(a, b)` for commuting elements `a`, `b` of A.
pub fn eval_poly(p: &CommPoly, a: &OreElement, b: &OreElement) -> OreElement {
    let arr = a.arrangement();
    let mut out = OreElement::zero(arr);
    let mut pa: Vec<OreElement> = vec![OreElement::one(arr)];
    let mut pb: Vec<OreElement> = vec![OreElement::one(arr)];
    for (&(i, j), c) in p.terms() {
        while pa.len() <= i as usize {
            let next = &pa[pa.len() - 1] * a;
            pa.push(next);
        }
        while pb.len() <= j as usize {
            let next = &pb[pb.len() - 1] * b;
            pb.push(next);
        }
        out = &out + &(&pa[i as usize] * &pb[j as usize]).scale(c);
    }
    out
}

fn relations(arr: &Arc<Arrangement>, img: &[OreElement; 4], fimg: &OreElement) -> Vec<(&'static str, OreElement)> {
    let [x, y, d, e] = img;
    let r = Rational::from(arr.r());
    vec![
        ("[y,x] = 0", y.ad(x)),
        ("[D,x] = 0", d.ad(x)),
        ("[D,y] = F", &d.ad(y) - fimg),
        ("[E,x] = x", &e.ad(x) - x),
        ("[E,y] = y", &e.ad(y) - y),
        ("[E,D] = rD", &e.ad(d) - &d.scale(&r)),
    ]
}

/// An algebra endomorphism θ of A determined by θ(x), θ(y), θ(D), θ(E).
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    arr: Arc<Arrangement>,
    images: [OreElement; 4],
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Letter::ALL.iter().map(|l| format!("{} ↦ {}", l.name(), self.image(*l))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl AlgebraMorphism {
    /// Build from generator images, checking the six defining relations.
    pub fn new(arr: &Arc<Arrangement>, images: [OreElement; 4]) -> Result<Self> {
        let m = Self::new_unchecked(arr, images);
        if let Some((name, _)) = m.relation_residuals().into_iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::RelationFails(name.to_string()));
        }
        Ok(m)
    }

    pub fn new_unchecked(arr: &Arc<Arrangement>, images: [OreElement; 4]) -> Self {
        AlgebraMorphism { arr: arr.clone(), images }
    }

    pub fn identity(arr: &Arc<Arrangement>) -> Self {
        Self::new_unchecked(arr, Letter::ALL.map(|l| OreElement::letter(arr, l)))
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn image(&self, l: Letter) -> &OreElement {
        &self.images[l.index()]
    }

    pub fn images(&self) -> &[OreElement; 4] {
        &self.images
    }

    /// Each relation with `lhs − rhs` evaluated on the images.
    pub fn relation_residuals(&self) -> Vec<(&'static str, OreElement)> {
        let fimg = eval_poly(self.arr.f(), &self.images[0], &self.images[1]);
        relations(&self.arr, &self.images, &fimg)
    }

    pub fn respects_relations(&self) -> bool {
        self.relation_residuals().iter().all(|(_, v)| v.is_zero())
    }

    /// θ(u), substituting the images into each PBW word.
    pub fn apply(&self, u: &OreElement) -> OreElement {
        let mut cache = PowerCache::new(self);
        let mut out = OreElement::zero(&self.arr);
        for (m, c) in u.terms() {
            out = &out + &cache.mono(m).scale(c);
        }
        out
    }

    pub fn apply_mono(&self, m: &Mono) -> OreElement {
        PowerCache::new(self).mono(m)
    }

    /// θ(p) for p ∈ S.
    pub fn apply_poly(&self, p: &CommPoly) -> OreElement {
        eval_poly(p, &self.images[0], &self.images[1])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMorphism) -> AlgebraMorphism {
        let mut cache = PowerCache::new(self);
        let images = other.images.clone().map(|g| {
            let mut out = OreElement::zero(&self.arr);
            for (m, c) in g.terms() {
                out = &out + &cache.mono(m).scale(c);
            }
            out
        });
        AlgebraMorphism { arr: self.arr.clone(), images }
    }

    /// Generators on which the two morphisms differ.
    pub fn differences(&self, other: &AlgebraMorphism) -> Vec<Letter> {
        Letter::ALL.into_iter().filter(|l| self.image(*l) != other.image(*l)).collect()
    }
}

/// Memoized powers of the generator images of a morphism.
pub struct PowerCache<'a> {
    m: &'a AlgebraMorphism,
    powers: [Vec<OreElement>; 4],
    monos: HashMap<Mono, OreElement>,
}

impl<'a> PowerCache<'a> {
    pub fn new(m: &'a AlgebraMorphism) -> Self {
        let one = OreElement::one(&m.arr);
        PowerCache { m, powers: std::array::from_fn(|_| vec![one.clone()]), monos: HashMap::new() }
    }

    fn power(&mut self, l: Letter, n: u32) -> OreElement {
        let v = &mut self.powers[l.index()];
        while v.len() <= n as usize {
            let next = &v[v.len() - 1] * &self.m.images[l.index()];
            v.push(next);
        }
        v[n as usize].clone()
    }

    pub fn mono(&mut self, m: &Mono) -> OreElement {
        if let Some(v) = self.monos.get(m) {
            return v.clone();
        }
        let mut acc = OreElement::one(&self.m.arr);
        for l in Letter::ALL {
            let e = m.exp(l);
            if e > 0 {
                acc = &acc * &self.power(l, e);
            }
        }
        self.monos.insert(*m, acc.clone());
        acc
    }
}

/// A derivation of A determined by its values on x, y, D, E.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    arr: Arc<Arrangement>,
    images: [OreElement; 4],
}

impl Derivation {
    pub fn new(arr: &Arc<Arrangement>, images: [OreElement; 4]) -> Result<Self> {
        let d = Derivation { arr: arr.clone(), images };
        if let Some((name, _)) = d.relation_residuals().into_iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::RelationFails(name.to_string()));
        }
        Ok(d)
    }

    pub fn new_unchecked(arr: &Arc<Arrangement>, images: [OreElement; 4]) -> Self {
        Derivation { arr: arr.clone(), images }
    }

    /// The inner derivation `[u, −]`.
    pub fn inner(u: &OreElement) -> Self {
        let arr = u.arrangement();
        Derivation { arr: arr.clone(), images: Letter::ALL.map(|l| u.ad(&OreElement::letter(arr, l))) }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn image(&self, l: Letter) -> &OreElement {
        &self.images[l.index()]
    }

    /// δ applied to each relation, as `lhs − rhs`.
    pub fn relation_residuals(&self) -> Vec<(&'static str, OreElement)> {
        let g = Letter::ALL.map(|l| OreElement::letter(&self.arr, l));
        let [dx, dy, dd, de] = &self.images;
        let [x, y, d, e] = &g;
        let r = Rational::from(self.arr.r());
        let br = |a: &OreElement, da: &OreElement, b: &OreElement, db: &OreElement| &da.ad(b) + &a.ad(db);
        let f = OreElement::from_poly(&self.arr, self.arr.f());
        vec![
            ("[y,x] = 0", br(y, dy, x, dx)),
            ("[D,x] = 0", br(d, dd, x, dx)),
            ("[D,y] = F", &br(d, dd, y, dy) - &self.apply(&f)),
            ("[E,x] = x", &br(e, de, x, dx) - dx),
            ("[E,y] = y", &br(e, de, y, dy) - dy),
            ("[E,D] = rD", &br(e, de, d, dd) - &dd.scale(&r)),
        ]
    }

    /// δ(u) by the Leibniz rule over each PBW word.
    pub fn apply(&self, u: &OreElement) -> OreElement {
        let mut out = OreElement::zero(&self.arr);
        for (m, c) in u.terms() {
            let word = m.word();
            for (i, l) in word.iter().enumerate() {
                let left = OreElement::mono(&self.arr, Mono::from_sorted_word(&word[..i]), c.clone());
                let right = OreElement::mono(&self.arr, Mono::from_sorted_word(&word[i + 1..]), Rational::one());
                out = &out + &(&(&left * &self.images[l.index()]) * &right);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { arr: self.arr.clone(), images: self.images.clone().map(|v| v.scale(c)) }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation { arr: self.arr.clone(), images: std::array::from_fn(|i| &self.images[i] + &other.images[i]) }
    }

    /// The commutator derivation `δ∘ε − ε∘δ`.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        Derivation {
            arr: self.arr.clone(),
            images: std::array::from_fn(|i| &self.apply(&other.images[i]) - &other.apply(&self.images[i])),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(OreElement::is_zero)
    }

    /// exp(δ) on generators, summing δⁿ(g)/n! until the terms vanish.
    pub fn exp(&self, max_terms: u32) -> Result<AlgebraMorphism> {
        let images = Letter::ALL.map(|l| exp_series(&OreElement::letter(&self.arr, l), max_terms, |v| self.apply(v)));
        let images: [OreElement; 4] = match images {
            [Some(a), Some(b), Some(c), Some(d)] => [a, b, c, d],
            _ => return Err(Error::ConditionFails("exponential series did not terminate".into())),
        };
        AlgebraMorphism::new(&self.arr, images)
    }
}

/// Σ_n fⁿ(g)/n!, or `None` if fⁿ(g) is still nonzero after `max_terms` steps.
pub fn exp_series(g: &OreElement, max_terms: u32, mut f: impl FnMut(&OreElement) -> OreElement) -> Option<OreElement> {
    let mut term = g.clone();
    let mut sum = g.clone();
    let mut fact = Rational::one();
    for n in 1..=max_terms {
        term = f(&term);
        if term.is_zero() {
            return Some(sum);
        }
        fact = &fact * Rational::from(n);
        sum = &sum + &term.scale(&fact.recip());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_respects_relations() {
        let a = Arrangement::example(3).unwrap();
        let id = AlgebraMorphism::identity(&a);
        assert!(id.respects_relations());
        let u = crate::text::parse_element(&a, "x*D*E + y^2*E^2 - 3").unwrap();
        assert_eq!(id.apply(&u), u);
    }

    #[test]
    fn inner_derivation_respects_relations() {
        let a = Arrangement::example(3).unwrap();
        let u = crate::text::parse_element(&a, "x*y*E + D").unwrap();
        let d = Derivation::inner(&u);
        assert!(d.relation_residuals().iter().all(|(_, v)| v.is_zero()));
        let v = crate::text::parse_element(&a, "y*D*E").unwrap();
        assert_eq!(d.apply(&v), u.ad(&v));
    }

    #[test]
    fn broken_images_rejected() {
        let a = Arrangement::example(3).unwrap();
        let mut img = Letter::ALL.map(|l| OreElement::letter(&a, l));
        img[2] = &img[2] + &OreElement::e(&a);
        assert!(matches!(AlgebraMorphism::new(&a, img), Err(Error::RelationFails(_))));
    }
}
