//! Automorphisms of A: graded automorphisms, exponentials of inner
//! derivations, normal elements and the modular automorphism.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, NotNormalReason, Result};
use crate::hochschild::partial_derivation_morphism;
use crate::morphism::{AlgebraMorphism, Derivation};
use crate::ore::{Letter, Mono, OreElement};
use crate::poly::{CommPoly, LinearForm};
use crate::rational::Rational;
use crate::report::{Check, Report};

/// σ(x) = x, σ(y) = y, σ(D) = D + F_y, σ(E) = E + r + 2.
pub fn modular_sigma(arr: &Arc<Arrangement>) -> AlgebraMorphism {
    let shift = OreElement::scalar(arr, Rational::from(arr.r() + 2));
    let fy = OreElement::from_poly(arr, &arr.f_y());
    AlgebraMorphism::new(arr, [OreElement::x(arr), OreElement::y(arr), &OreElement::d(arr) + &fy, &OreElement::e(arr) + &shift])
        .expect("σ respects the relations")
}

/// Data of a graded automorphism: x ↦ ax+by, y ↦ cx+dy, E ↦ E+v and
/// D ↦ φ₀ − (ebF/(ax+by))E + eD (the middle term only when b ≠ 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAuto {
    pub m: [[Rational; 2]; 2],
    pub e: Rational,
    pub v: Rational,
    pub phi0: CommPoly,
}

impl GradedAuto {
    pub fn identity() -> GradedAuto {
        GradedAuto {
            m: [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]],
            e: Rational::one(),
            v: Rational::zero(),
            phi0: CommPoly::zero(),
        }
    }

    pub fn det(&self) -> Rational {
        let [[a, b], [c, d]] = &self.m;
        &(a * d) - &(b * c)
    }

    /// p(ax+by, cx+dy).
    pub fn act_on_poly(&self, p: &CommPoly) -> CommPoly {
        let [[a, b], [c, d]] = &self.m;
        p.substitute(&form(a, b), &form(c, d))
    }

    /// The inverse data: M⁻¹, 1/e, −v and the matching φ₀.
    pub fn inverse(&self, arr: &Arrangement) -> Result<GradedAuto> {
        let det = self.det();
        if det.is_zero() || self.e.is_zero() {
            return Err(Error::ConditionFails("matrix or e is not invertible".into()));
        }
        let [[a, b], [c, d]] = &self.m;
        let inv_det = det.recip();
        let m = [[d * &inv_det, -(b * &inv_det)], [-(c * &inv_det), a * &inv_det]];
        let e = self.e.recip();
        let v = -self.v.clone();
        let mut inv = GradedAuto { m, e: e.clone(), v: v.clone(), phi0: CommPoly::zero() };
        let back = inv.act_on_poly(&self.phi0);
        let mut phi0 = back.scale(&-e.clone());
        let b2 = inv.m[0][1].clone();
        if !b2.is_zero() {
            let g = quotient_term(arr, &inv.m[0][0], &b2)?;
            phi0 = &phi0 + &g.scale(&(&(&e * &b2) * &self.v));
        }
        inv.phi0 = phi0;
        Ok(inv)
    }
}

fn form(a: &Rational, b: &Rational) -> CommPoly {
    let mut p = CommPoly::zero();
    p.add_term(1, 0, a.clone());
    p.add_term(0, 1, b.clone());
    p
}

/// F / (ax + by).
fn quotient_term(arr: &Arrangement, a: &Rational, b: &Rational) -> Result<CommPoly> {
    arr.f().divide_exact(&LinearForm::new(a.clone(), b.clone())?)
}

/// The graded automorphism with the given data, after checking
/// Q(ax+by, cx+dy) = (ad−bc)e·Q and the divisibility needed for θ(D).
pub fn graded_auto(arr: &Arc<Arrangement>, g: &GradedAuto) -> Result<AlgebraMorphism> {
    let det = g.det();
    if det.is_zero() {
        return Err(Error::ConditionFails("the matrix is singular".into()));
    }
    if g.e.is_zero() {
        return Err(Error::ConditionFails("e must be nonzero".into()));
    }
    if !g.phi0.is_zero() && g.phi0.homogeneous_component(arr.r()) != g.phi0 {
        return Err(Error::ConditionFails(format!("φ₀ = {} is not in S_{}", g.phi0, arr.r())));
    }
    let moved = g.act_on_poly(arr.q());
    let want = arr.q().scale(&(&det * &g.e));
    if moved != want {
        return Err(Error::ConditionFails(format!("Q(ax+by, cx+dy) = {moved} differs from (ad−bc)e·Q = {want}")));
    }
    let [[a, b], [c, d]] = &g.m;
    let x = OreElement::from_poly(arr, &form(a, b));
    let y = OreElement::from_poly(arr, &form(c, d));
    let e = &OreElement::e(arr) + &OreElement::scalar(arr, g.v.clone());
    let mut dd = &OreElement::from_poly(arr, &g.phi0) + &OreElement::d(arr).scale(&g.e);
    if !b.is_zero() {
        let q = quotient_term(arr, a, b)?.scale(&(&g.e * b));
        dd = &dd - &(&OreElement::from_poly(arr, &q) * &OreElement::e(arr));
    }
    AlgebraMorphism::new(arr, [x, y, dd, e])
}

/// exp ad(f) by the closed form x ↦ x, y ↦ y, D ↦ D − F·f_y, E ↦ E − [E, f].
pub fn exp_ad(arr: &Arc<Arrangement>, f: &OreElement) -> Result<AlgebraMorphism> {
    let p = f.to_poly()?;
    let ffy = arr.f() * &p.partial_y();
    let d = &OreElement::d(arr) - &OreElement::from_poly(arr, &ffy);
    let e = &OreElement::e(arr) - &OreElement::e(arr).ad(f);
    AlgebraMorphism::new(arr, [OreElement::x(arr), OreElement::y(arr), d, e])
}

/// exp ad(f) by summing Σ ad(f)ⁿ/n! on each generator until it terminates.
pub fn exp_ad_series(arr: &Arc<Arrangement>, f: &OreElement, max_terms: u32) -> Result<AlgebraMorphism> {
    if !f.in_s() {
        return Err(Error::NotInS(f.to_string()));
    }
    let _ = arr;
    Derivation::inner(f).exp(max_terms)
}

/// Whether exp ad(f)∘θ₀ = θ₀∘exp ad(g) on generators.
pub fn semidirect_check_with(arr: &Arc<Arrangement>, theta0: &GradedAuto, f: &CommPoly, g: &CommPoly) -> Result<bool> {
    let t = graded_auto(arr, theta0)?;
    let lhs = exp_ad(arr, &OreElement::from_poly(arr, f))?.compose(&t);
    let rhs = t.compose(&exp_ad(arr, &OreElement::from_poly(arr, g))?);
    Ok(lhs == rhs)
}

/// exp ad(f)∘θ₀ = θ₀∘exp ad(θ₀⁻¹(f)).
pub fn semidirect_check(arr: &Arc<Arrangement>, theta0: &GradedAuto, f: &CommPoly) -> Result<bool> {
    let inv = theta0.inverse(arr)?;
    semidirect_check_with(arr, theta0, f, &inv.act_on_poly(f))
}

/// σ respects the relations and fixes S, σ(Q) = Q, and a·Q = Q·σ(a) for
/// every PBW monomial a of exponent sum ≤ `depth`.
pub fn verify_modular(arr: &Arc<Arrangement>, depth: u32) -> Report {
    let sigma = modular_sigma(arr);
    let mut rep = Report::new();
    for (name, v) in sigma.relation_residuals() {
        rep.push(Check::from_bool("σ relation", name, v.is_zero(), || v.to_string()));
    }
    for l in [Letter::X, Letter::Y] {
        let g = OreElement::letter(arr, l);
        rep.push(Check::from_bool("σ fixes S", l.name(), sigma.image(l) == &g, || sigma.image(l).to_string()));
    }
    let q = OreElement::from_poly(arr, arr.q());
    let sq = sigma.apply(&q);
    rep.push(Check::from_bool("σ(Q) = Q", "Q", sq == q, || sq.to_string()));
    let mut bad = Vec::new();
    for m in Mono::all_up_to(depth) {
        let a = OreElement::mono(arr, m, Rational::one());
        let lhs = &a * &q;
        let rhs = &q * &sigma.apply(&a);
        if lhs != rhs {
            bad.push(m.to_string());
        }
    }
    let count = Mono::all_up_to(depth).len();
    rep.push(Check::from_bool(
        "a·Q = Q·σ(a)",
        format!("{count} monomials of exponent sum ≤ {depth}"),
        bad.is_empty(),
        || format!("fails on {}", bad.join(", ")),
    ));
    rep
}

/// The derivation Σ c_j ∂_{α_j}.
pub fn partial_combination(arr: &Arc<Arrangement>, coeffs: &[Rational]) -> Result<Derivation> {
    let mut out = Derivation::new_unchecked(arr, Letter::ALL.map(|_| OreElement::zero(arr)));
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&partial_derivation_morphism(arr, i)?.scale(c));
        }
    }
    Ok(out)
}

/// Generators on which σ differs from exp(−Σ∂) and from exp(+Σ∂).
pub fn sigma_against_partials(arr: &Arc<Arrangement>) -> Result<(Vec<Letter>, Vec<Letter>)> {
    let sigma = modular_sigma(arr);
    let ones = vec![Rational::one(); arr.num_lines()];
    let minus = partial_combination(arr, &ones)?.scale(&-Rational::one()).exp(8)?;
    let plus = partial_combination(arr, &ones)?.exp(8)?;
    Ok((sigma.differences(&minus), sigma.differences(&plus)))
}

/// A normal element λ·Π α_j^{i_j}, exponents in the order of the forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalElementWitness {
    pub lambda: Rational,
    pub exponents: Vec<u32>,
}

impl NormalElementWitness {
    pub fn element(&self, arr: &Arc<Arrangement>) -> OreElement {
        let mut p = CommPoly::constant(self.lambda.clone());
        for (f, &i) in arr.forms().iter().zip(&self.exponents) {
            p = &p * &f.to_poly().pow(i);
        }
        OreElement::from_poly(arr, &p)
    }
}

/// θ_u = exp(−Σ i_j ∂_{α_j}) in closed form: S is fixed,
/// D ↦ D − Σ i_j α_{j,y}F/α_j and E ↦ E − Σ i_j.
pub fn normal_auto(arr: &Arc<Arrangement>, w: &NormalElementWitness) -> Result<AlgebraMorphism> {
    if w.exponents.len() != arr.num_lines() {
        return Err(Error::IndexOutOfRange { index: w.exponents.len(), len: arr.num_lines() });
    }
    let mut d = OreElement::d(arr);
    let mut total = 0u32;
    for (f, &i) in arr.forms().iter().zip(&w.exponents) {
        if i == 0 {
            continue;
        }
        total += i;
        let q = arr.f().scale(&(&f.b * Rational::from(i))).divide_exact(f)?;
        d = &d - &OreElement::from_poly(arr, &q);
    }
    let e = &OreElement::e(arr) - &OreElement::scalar(arr, Rational::from(total));
    AlgebraMorphism::new(arr, [OreElement::x(arr), OreElement::y(arr), d, e])
}

/// θ_u as the exponential series of −Σ i_j ∂_{α_j}.
pub fn normal_auto_series(arr: &Arc<Arrangement>, w: &NormalElementWitness) -> Result<AlgebraMorphism> {
    let coeffs: Vec<Rational> = w.exponents.iter().map(|&i| -Rational::from(i)).collect();
    partial_combination(arr, &coeffs)?.exp(8)
}

/// Decides whether `u` is a nonzero normal element, i.e. a scalar times a
/// product of the arrangement's linear forms.
pub fn is_normal(arr: &Arc<Arrangement>, u: &OreElement) -> Result<NormalElementWitness> {
    let fail = |reason| Err(Error::NotNormal { element: u.to_string(), reason });
    if u.is_zero() {
        return fail(NotNormalReason::Zero);
    }
    let Ok(mut p) = u.to_poly() else { return fail(NotNormalReason::NotInS) };
    let mut exponents = vec![0; arr.num_lines()];
    for (j, f) in arr.forms().iter().enumerate() {
        while let Ok(q) = p.divide_exact(f) {
            p = q;
            exponents[j] += 1;
        }
    }
    if p.is_constant() {
        return Ok(NormalElementWitness { lambda: p.coeff(0, 0), exponents });
    }
    if !p.is_homogeneous() {
        return fail(NotNormalReason::NonSplitFactor);
    }
    match rational_line_factor(&p) {
        Some(_) => fail(NotNormalReason::ForeignLine),
        None => fail(NotNormalReason::NonSplitFactor),
    }
}

/// Some rational linear factor of a nonconstant homogeneous binary form,
/// found through the rational roots of its dehomogenization.
pub fn rational_line_factor(p: &CommPoly) -> Option<LinearForm> {
    let n = p.degree()?;
    if n == 0 {
        return None;
    }
    if p.coeff(n, 0).is_zero() {
        return Some(LinearForm::int(0, 1));
    }
    if p.coeff(0, n).is_zero() {
        return Some(LinearForm::int(1, 0));
    }
    // p(t, 1) = Σ c_i tⁱ with integer coefficients after clearing denominators.
    let lcm = (0..=n).fold(BigInt::one(), |acc, i| {
        let d = p.coeff(i, n - i).denom();
        num_integer::Integer::lcm(&acc, &d)
    });
    let ints: Vec<BigInt> = (0..=n).map(|i| (&p.coeff(i, n - i) * Rational::from(lcm.clone())).numer()).collect();
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(&ints[n as usize])?;
    for &a in &num_divs {
        for &b in &den_divs {
            for s in [1i64, -1] {
                let t = Rational::from(BigInt::from(a) * s) * Rational::from(BigInt::from(b)).recip();
                let val = (0..=n).fold(Rational::zero(), |acc, i| &(&acc * &t) + &Rational::from(ints[(n - i) as usize].clone()));
                if val.is_zero() {
                    return LinearForm::new(Rational::one(), -t).ok();
                }
            }
        }
    }
    None
}

/// Positive divisors of a nonzero integer below 10¹², by trial division.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v > 0 && v < 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    fn ex3() -> Arc<Arrangement> {
        Arrangement::example(3).unwrap()
    }

    #[test]
    fn identity_graded_auto() {
        let a = ex3();
        assert_eq!(graded_auto(&a, &GradedAuto::identity()).unwrap(), AlgebraMorphism::identity(&a));
    }

    #[test]
    fn scaling_auto() {
        let a = ex3();
        let t = Rational::from(2);
        let g = GradedAuto {
            m: [[t.clone(), Rational::zero()], [Rational::zero(), t.clone()]],
            e: t.pow(3),
            v: Rational::zero(),
            phi0: CommPoly::zero(),
        };
        let th = graded_auto(&a, &g).unwrap();
        let inv = graded_auto(&a, &g.inverse(&a).unwrap()).unwrap();
        assert_eq!(th.compose(&inv), AlgebraMorphism::identity(&a));
    }

    #[test]
    fn reflection_leaves_arrangement() {
        let forms = [(1, 0), (0, 1), (1, -1), (1, 1), (1, -2)].map(|(a, b)| LinearForm::int(a, b)).to_vec();
        let a = Arrangement::build(forms).unwrap();
        let g = GradedAuto {
            m: [[Rational::one(), Rational::zero()], [Rational::zero(), -Rational::one()]],
            ..GradedAuto::identity()
        };
        assert!(matches!(graded_auto(&a, &g), Err(Error::ConditionFails(_))));
    }

    #[test]
    fn exp_ad_of_y_squared() {
        let a = ex3();
        let f = parse_element(&a, "y^2").unwrap();
        let m = exp_ad(&a, &f).unwrap();
        assert_eq!(m.image(Letter::E), &parse_element(&a, "E - 2*y^2").unwrap());
        assert_eq!(m, exp_ad_series(&a, &f, 16).unwrap());
    }

    #[test]
    fn theta_of_x() {
        let a = ex3();
        let w = NormalElementWitness { lambda: Rational::one(), exponents: vec![1, 0, 0, 0, 0] };
        let th = normal_auto(&a, &w).unwrap();
        assert_eq!(th.image(Letter::E), &parse_element(&a, "E - 1").unwrap());
        assert_eq!(th.image(Letter::D), &OreElement::d(&a));
        let x = OreElement::x(&a);
        let e = OreElement::e(&a);
        assert_eq!(&x * &e, &th.apply(&e) * &x);
    }

    #[test]
    fn not_normal_reasons() {
        let a = ex3();
        let reason = |s: &str| match is_normal(&a, &parse_element(&a, s).unwrap()) {
            Err(Error::NotNormal { reason, .. }) => Some(reason),
            _ => None,
        };
        assert_eq!(reason("x + D"), Some(NotNormalReason::NotInS));
        assert_eq!(reason("x^2 + y^2"), Some(NotNormalReason::NonSplitFactor));
        assert_eq!(reason("x*(x + y)"), Some(NotNormalReason::ForeignLine));
        assert_eq!(reason("x + 1"), Some(NotNormalReason::NonSplitFactor));
        assert_eq!(reason("0"), Some(NotNormalReason::Zero));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&BigInt::from(12)).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::from(-9)).unwrap(), vec![1, 3, 9]);
        assert!(divisors(&BigInt::from(0)).is_none());
    }
}
