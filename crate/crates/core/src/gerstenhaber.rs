//! Gerstenhaber brackets on A⊗ΛV*, computed on the bar resolution as
//! [α̃, β̃]∘φ with α̃ = α∘ψ, and the cup and bracket tables.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::comparison::{phi_generator, psi1, psi2};
use crate::diagonal::cup;
use crate::error::{Error, Result};
use crate::hochschild::{hh1_element, omega2, omega3, partial_derivation, Cochain};
use crate::ore::{Letter, Mono, OreElement};
use crate::poly::CommPoly;
use crate::rational::Rational;
use crate::report::TableEntry;
use crate::resolution::BimoduleChain;
use crate::wedge::Wedge;
use crate::window::is_coboundary;

/// `Σ c·l·α(w)·r` over the terms `c·l|w|r` of a chain.
pub fn evaluate(alpha: &Cochain, c: &BimoduleChain) -> OreElement {
    let arr = alpha.arrangement();
    let mut out = OreElement::zero(arr);
    for ((l, w, r), k) in c.terms() {
        let a = alpha.component(*w);
        if a.is_zero() {
            continue;
        }
        let t = &(&OreElement::mono(arr, *l, k.clone()) * &a) * &OreElement::mono(arr, *r, Rational::one());
        out = &out + &t;
    }
    out
}

/// The bar cochain α̃ = α∘ψ_p, evaluated on demand and memoized.
pub struct BarCochain<'a> {
    alpha: &'a Cochain,
    p: usize,
    cache: RefCell<HashMap<Vec<Mono>, OreElement>>,
}

impl<'a> BarCochain<'a> {
    pub fn new(alpha: &'a Cochain, p: usize) -> Result<Self> {
        if p > 2 {
            return Err(Error::UnsupportedDegree(format!("ψ_{p}")));
        }
        Ok(BarCochain { alpha, p, cache: RefCell::new(HashMap::new()) })
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    /// α̃(a₁, …, a_p) for monomial arguments.
    pub fn eval(&self, args: &[Mono]) -> OreElement {
        debug_assert_eq!(args.len(), self.p);
        let arr = self.alpha.arrangement();
        if args.iter().any(|m| m.is_one()) {
            return OreElement::zero(arr);
        }
        if let Some(v) = self.cache.borrow().get(args) {
            return v.clone();
        }
        let chain = match args {
            [] => BimoduleChain::generator(arr, Wedge::EMPTY),
            [a] => psi1(arr, a),
            [a, b] => psi2(arr, a, b),
            _ => unreachable!(),
        };
        let v = evaluate(self.alpha, &chain);
        self.cache.borrow_mut().insert(args.to_vec(), v.clone());
        v
    }
}

/// (α̃ ⋄ β̃)(a₁, …, a_n) = Σ_i (−1)^{(q−1)(i−1)} α̃(a₁, …, β̃(a_i, …), …).
pub fn diamond(alpha: &BarCochain, beta: &BarCochain, args: &[Mono]) -> OreElement {
    let (p, q) = (alpha.p, beta.p);
    let arr = alpha.alpha.arrangement();
    let mut out = OreElement::zero(arr);
    for i in 0..p {
        if i + q > args.len() {
            break;
        }
        let inner = beta.eval(&args[i..i + q]);
        if inner.is_zero() {
            continue;
        }
        let sign = if (q + 1) * i % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mut slot = args[..i].to_vec();
        slot.push(Mono::ONE);
        slot.extend_from_slice(&args[i + q..]);
        for (m, k) in inner.terms() {
            slot[i] = *m;
            let v = alpha.eval(&slot);
            if !v.is_zero() {
                out = &out + &v.scale(&(&sign * k));
            }
        }
    }
    out
}

/// α ⋄ β pulled back along φ, as a cochain of degree p + q − 1.
pub fn diamond_cochain(alpha: &Cochain, p: usize, beta: &Cochain, q: usize) -> Result<Cochain> {
    let arr = alpha.arrangement();
    let a = BarCochain::new(alpha, p)?;
    let b = BarCochain::new(beta, q)?;
    pull_back(arr, p + q - 1, |args| diamond(&a, &b, args))
}

fn pull_back(arr: &Arc<Arrangement>, n: usize, mut f: impl FnMut(&[Mono]) -> OreElement) -> Result<Cochain> {
    let mut out = Cochain::zero(arr);
    for g in Wedge::all_of_len(n) {
        let img = phi_generator(arr, g)?;
        let mut val = OreElement::zero(arr);
        for (t, k) in img.terms() {
            let v = f(&t[1..t.len() - 1]);
            if v.is_zero() {
                continue;
            }
            let term = &(&OreElement::mono(arr, t[0], k.clone()) * &v) * &OreElement::mono(arr, t[t.len() - 1], Rational::one());
            val = &val + &term;
        }
        out.add_component(g, &val);
    }
    Ok(out)
}

/// [α, β] = (α̃⋄β̃ − (−1)^{(p−1)(q−1)} β̃⋄α̃)∘φ for cochains of degree ≤ 2.
pub fn bracket(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    let arr = alpha.arrangement();
    let (Some(p), Some(q)) = (alpha.degree(), beta.degree()) else {
        return Ok(Cochain::zero(arr));
    };
    if p + q == 0 {
        return Ok(Cochain::zero(arr));
    }
    let a = BarCochain::new(alpha, p)?;
    let b = BarCochain::new(beta, q)?;
    let sign = if (p + 1) * (q + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
    pull_back(arr, p + q - 1, |args| {
        let x = diamond(&a, &b, args);
        let y = diamond(&b, &a, args);
        &x - &y.scale(&sign)
    })
}

/// [α, β⌣γ] = [α, β]⌣γ + (−1)^{(p−1)q'} β⌣[α, γ], with q' = deg β. Used when
/// the bracket would need ψ in degree 3.
pub fn bracket_with_product(alpha: &Cochain, beta: &Cochain, gamma: &Cochain) -> Result<Cochain> {
    let arr = alpha.arrangement();
    let (Some(p), Some(qb)) = (alpha.degree(), beta.degree()) else {
        return Ok(Cochain::zero(arr));
    };
    let first = cup(&bracket(alpha, beta)?, gamma)?;
    let second = cup(beta, &bracket(alpha, gamma)?)?;
    let sign = if (p + 1) * qb % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(&first + &second.scale(&sign))
}

/// Compare two cochains modulo coboundaries of E-degree ≤ `n`.
pub fn compare(table: &str, entry: impl Into<String>, lhs: &Cochain, rhs: &Cochain, n: u32) -> TableEntry {
    let diff = lhs - rhs;
    let (pass, witness) = if diff.is_zero() {
        (true, None)
    } else {
        match is_coboundary(&diff, n) {
            Some(w) => (true, Some(w.to_string())),
            None => (false, None),
        }
    };
    TableEntry { table: table.into(), entry: entry.into(), pass, lhs: lhs.to_string(), rhs: rhs.to_string(), witness }
}

fn wedge(ls: &[Letter]) -> Wedge {
    Wedge::of(ls)
}

fn poly_elt(arr: &Arc<Arrangement>, p: &CommPoly) -> OreElement {
    OreElement::from_poly(arr, p)
}

/// Sample polynomials of degree `deg`: every monomial plus one mixed sum.
fn samples(deg: u32) -> Vec<CommPoly> {
    let mut out: Vec<CommPoly> = (0..=deg).map(|i| CommPoly::monomial(i, deg - i, Rational::one())).collect();
    let mut mixed = CommPoly::zero();
    for i in 0..=deg {
        mixed.add_term(i, deg - i, Rational::from(i as i64 + 1) * Rational::new(1, 2));
    }
    out.push(mixed);
    out
}

fn show(p: &CommPoly) -> String {
    p.to_string()
}

/// u = μy^r + xū.
fn split_u(arr: &Arrangement, u: &CommPoly) -> (Rational, CommPoly) {
    let r = arr.r();
    let mu = u.coeff(0, r);
    let mut ubar = CommPoly::zero();
    for ((i, j), c) in u.terms() {
        if *i > 0 {
            ubar.add_term(i - 1, *j, c.clone());
        }
    }
    (mu, ubar)
}

/// ((μ−λ)yF_x + μyF̄ − y²ū)⊗ŷ∧D̂ for u = μy^r + xū.
fn omega_bracket_value(arr: &Arc<Arrangement>, u: &CommPoly, lambda: &Rational) -> CommPoly {
    let (mu, ubar) = split_u(arr, u);
    let a = arr.f_x().mul_monomial(0, 1).scale(&(&mu - lambda));
    let b = arr.fbar().mul_monomial(0, 1).scale(&mu);
    let c = ubar.mul_monomial(0, 2);
    &(&a + &b) - &c
}

fn e_hat(arr: &Arc<Arrangement>) -> Cochain {
    Cochain::single(Wedge::letter(Letter::E), &OreElement::one(arr))
}

/// Representatives of HH² and HH³ used in the tables: ω, κ⊗ŷ∧D̂ and
/// ψD⊗ŷ∧D̂, S_r⊗D̂∧Ê (and Ê-extensions in degree 3).
fn degree2_family(arr: &Arc<Arrangement>) -> Vec<(String, Cochain)> {
    use Letter::*;
    let r = arr.r();
    let mut out = vec![("ω₂".to_string(), omega2(arr))];
    for k in samples(r + 1) {
        out.push((format!("({})⊗ŷ∧D̂", show(&k)), Cochain::single(wedge(&[Y, D]), &poly_elt(arr, &k))));
    }
    for w in samples(1) {
        let c = &poly_elt(arr, &w) * &OreElement::d(arr);
        out.push((format!("({})D⊗ŷ∧D̂", show(&w)), Cochain::single(wedge(&[Y, D]), &c)));
    }
    for u in samples(r) {
        out.push((format!("({})⊗D̂∧Ê", show(&u)), Cochain::single(wedge(&[D, E]), &poly_elt(arr, &u))));
    }
    out
}

/// Every row of the cup product table on sample representatives.
pub fn cup_table(arr: &Arc<Arrangement>, n: u32) -> Result<Vec<TableEntry>> {
    use Letter::*;
    let r = arr.r();
    let mut out = Vec::new();
    let e = e_hat(arr);
    let d_hat = |u: &CommPoly| Cochain::single(Wedge::letter(D), &poly_elt(arr, u));
    let zero = Cochain::zero(arr);
    let sr = samples(r);
    for u in &sr {
        for v in &sr {
            let lhs = cup(&d_hat(u), &d_hat(v))?;
            out.push(compare("cup", format!("({})D̂ ⌣ ({})D̂ = 0", show(u), show(v)), &lhs, &zero, n));
        }
        let lhs = cup(&d_hat(u), &e)?;
        let rhs = Cochain::single(wedge(&[D, E]), &poly_elt(arr, u));
        out.push(compare("cup", format!("({})D̂ ⌣ Ê = ({})D̂∧Ê", show(u), show(u)), &lhs, &rhs, n));
        for (name, c) in degree2_family(arr) {
            let lhs = cup(&d_hat(u), &c)?;
            out.push(compare("cup", format!("({})D̂ ⌣ {name} = 0", show(u)), &lhs, &zero, n));
        }
    }
    out.push(compare("cup", "Ê ⌣ ω₂ = ω₃", &cup(&e, &omega2(arr))?, &omega3(arr), n));
    for k in samples(r + 1) {
        let c = Cochain::single(wedge(&[Y, D]), &poly_elt(arr, &k));
        let rhs = Cochain::single(wedge(&[Y, D, E]), &poly_elt(arr, &k));
        out.push(compare("cup", format!("Ê ⌣ ({})ŷ∧D̂ = ({})ŷ∧D̂∧Ê", show(&k), show(&k)), &cup(&e, &c)?, &rhs, n));
    }
    for w in samples(1) {
        let coeff = &poly_elt(arr, &w) * &OreElement::d(arr);
        let c = Cochain::single(wedge(&[Y, D]), &coeff);
        let rhs = Cochain::single(wedge(&[Y, D, E]), &coeff);
        out.push(compare("cup", format!("Ê ⌣ ({})D ŷ∧D̂ = ({})D ŷ∧D̂∧Ê", show(&w), show(&w)), &cup(&e, &c)?, &rhs, n));
    }
    for u in &sr {
        let c = Cochain::single(wedge(&[D, E]), &poly_elt(arr, u));
        out.push(compare("cup", format!("Ê ⌣ ({})D̂∧Ê = 0", show(u)), &cup(&e, &c)?, &zero, n));
    }
    let lines = arr.num_lines();
    for i in 0..lines {
        for j in 0..lines {
            let (ci, _) = partial_derivation(arr, i)?;
            let (cj, _) = partial_derivation(arr, j)?;
            let lhs = cup(&ci, &cj)?;
            let rhs = Cochain::single(wedge(&[D, E]), &poly_elt(arr, &partial_cup_value(arr, i, j)?));
            out.push(compare("cup", format!("∂{i} ⌣ ∂{j}"), &lhs, &rhs, n));
        }
    }
    Ok(out)
}

/// −det[[α_ix, α_jx], [α_iy, α_jy]]·Q/(α_iα_j).
pub fn partial_cup_value(arr: &Arrangement, i: usize, j: usize) -> Result<CommPoly> {
    let f = arr.forms();
    let (ai, aj) = (&f[i], &f[j]);
    if i == j {
        return Ok(CommPoly::zero());
    }
    let det = &(&ai.a * &aj.b) - &(&aj.a * &ai.b);
    let q = arr.q().divide_exact(ai)?.divide_exact(aj)?;
    Ok(q.scale(&-det))
}

fn hh1_samples(arr: &Arc<Arrangement>) -> Vec<(CommPoly, Rational)> {
    let r = arr.r();
    let mut out = Vec::new();
    let lambdas = [Rational::zero(), Rational::one(), Rational::new(-3, 2)];
    for (k, u) in samples(r).into_iter().enumerate() {
        out.push((u, lambdas[k % 3].clone()));
    }
    out.push((CommPoly::zero(), Rational::one()));
    out
}

/// Every block of the bracket table on sample representatives.
pub fn bracket_table(arr: &Arc<Arrangement>, n: u32) -> Result<Vec<TableEntry>> {
    use Letter::*;
    let r = arr.r();
    let mut out = Vec::new();
    let zero = Cochain::zero(arr);
    let one = Cochain::single(Wedge::EMPTY, &OreElement::one(arr));
    let e = e_hat(arr);
    let lines = arr.num_lines();
    let mut partials = Vec::new();
    for i in 0..lines {
        partials.push(partial_derivation(arr, i)?.0);
    }
    let fam2 = degree2_family(arr);

    // [0, •]
    for (name, c) in fam2.iter().take(3) {
        out.push(compare("bracket", format!("[1, {name}] = 0"), &bracket(&one, c)?, &zero, n));
    }
    out.push(compare("bracket", "[1, ∂0] = 0", &bracket(&one, &partials[0])?, &zero, n));

    // [1, 1]
    for i in 0..lines {
        for j in 0..lines {
            out.push(compare("bracket", format!("[∂{i}, ∂{j}] = 0"), &bracket(&partials[i], &partials[j])?, &zero, n));
        }
    }

    let sr = samples(r);
    let srp1 = samples(r + 1);
    let s1 = samples(1);
    for (u, lambda) in hh1_samples(arr) {
        let alpha = hh1_element(arr, &u, &lambda);
        let an = format!("({})D̂ + ({lambda})Ê", show(&u));
        // [1, 2]
        for u2 in sr.iter().take(2) {
            let beta = Cochain::single(wedge(&[D, E]), &poly_elt(arr, u2));
            out.push(compare("bracket", format!("[{an}, ({})D̂∧Ê] = 0", show(u2)), &bracket(&alpha, &beta)?, &zero, n));
        }
        for (v, w) in srp1.iter().zip(s1.iter().cycle()) {
            let coeff = &poly_elt(arr, v) + &(&poly_elt(arr, w) * &OreElement::d(arr));
            let beta = Cochain::single(wedge(&[Y, D]), &coeff);
            let rhs = Cochain::single(wedge(&[Y, D]), &poly_elt(arr, &(&u * w)));
            let label = format!("[{an}, ({} + ({})D)ŷ∧D̂]", show(v), show(w));
            out.push(compare("bracket", label.clone(), &bracket(&alpha, &beta)?, &rhs, n));
            // [1, 3] through Ê ⌣ (v + wD)ŷ∧D̂
            let lhs3 = bracket_with_product(&alpha, &e, &beta)?;
            let rhs3 = Cochain::single(wedge(&[Y, D, E]), &poly_elt(arr, &(&u * w)));
            out.push(compare("bracket", format!("{label}∧Ê"), &lhs3, &rhs3, n));
        }
        let value = omega_bracket_value(arr, &u, &lambda);
        let rhs = Cochain::single(wedge(&[Y, D]), &poly_elt(arr, &value));
        out.push(compare("bracket", format!("[{an}, ω₂]"), &bracket(&alpha, &omega2(arr))?, &rhs, n));
        let rhs3 = Cochain::single(wedge(&[Y, D, E]), &poly_elt(arr, &value));
        let lhs3 = bracket_with_product(&alpha, &e, &omega2(arr))?;
        out.push(compare("bracket", format!("[{an}, ω₃]"), &lhs3, &rhs3, n));
    }

    // [2, 2]
    for u in sr.iter().take(3) {
        let a = Cochain::single(wedge(&[D, E]), &poly_elt(arr, u));
        for u2 in sr.iter().take(3) {
            let b = Cochain::single(wedge(&[D, E]), &poly_elt(arr, u2));
            let label = format!("[({})D̂∧Ê, ({})D̂∧Ê] = 0", show(u), show(u2));
            out.push(compare("bracket", label, &bracket(&a, &b)?, &zero, n));
        }
        for (v, w) in srp1.iter().zip(s1.iter().cycle()).take(3) {
            let coeff = &poly_elt(arr, v) + &(&poly_elt(arr, w) * &OreElement::d(arr));
            let beta = Cochain::single(wedge(&[Y, D]), &coeff);
            let rhs = Cochain::single(wedge(&[Y, D, E]), &poly_elt(arr, &(u * w)));
            let label = format!("[({})D̂∧Ê, ({} + ({})D)ŷ∧D̂]", show(u), show(v), show(w));
            out.push(compare("bracket", label, &bracket(&a, &beta)?, &rhs, n));
        }
        let value = omega_bracket_value(arr, u, &Rational::zero());
        let rhs = Cochain::single(wedge(&[Y, D, E]), &poly_elt(arr, &value));
        out.push(compare("bracket", format!("[({})D̂∧Ê, ω₂]", show(u)), &bracket(&a, &omega2(arr))?, &rhs, n));
    }
    let pairs: Vec<Cochain> = srp1
        .iter()
        .zip(s1.iter().cycle())
        .take(3)
        .map(|(v, w)| Cochain::single(wedge(&[Y, D]), &(&poly_elt(arr, v) + &(&poly_elt(arr, w) * &OreElement::d(arr)))))
        .collect();
    for (i, a) in pairs.iter().enumerate() {
        for (j, b) in pairs.iter().enumerate() {
            out.push(compare("bracket", format!("[β{i}, β{j}] = 0 on (S_{{r+1}} + S_1D)ŷ∧D̂"), &bracket(a, b)?, &zero, n));
        }
        out.push(compare("bracket", format!("[β{i}, ω₂] = 0"), &bracket(a, &omega2(arr))?, &zero, n));
    }
    out.push(compare("bracket", "[ω₂, ω₂] = 0", &bracket(&omega2(arr), &omega2(arr))?, &zero, n));
    Ok(out)
}

/// 2y²F̄E⊗x̂∧ŷ∧D̂, the raw value of [ω₂, ω₂].
pub fn omega2_square_term(arr: &Arc<Arrangement>) -> Cochain {
    let c = &poly_elt(arr, &arr.fbar().mul_monomial(0, 2).scale(&Rational::from(2))) * &OreElement::e(arr);
    Cochain::single(Wedge::of(&[Letter::X, Letter::Y, Letter::D]), &c)
}

/// Cocycle representatives of degree ≤ 2 used by the invariant checks.
pub fn catalog(arr: &Arc<Arrangement>) -> Result<Vec<(String, Cochain)>> {
    let mut out = vec![("1".to_string(), Cochain::single(Wedge::EMPTY, &OreElement::one(arr))), ("Ê".to_string(), e_hat(arr))];
    for i in 0..arr.num_lines() {
        out.push((format!("∂{i}"), partial_derivation(arr, i)?.0));
    }
    for u in samples(arr.r()).into_iter().take(2) {
        out.push((format!("({})D̂", show(&u)), Cochain::single(Wedge::letter(Letter::D), &poly_elt(arr, &u))));
    }
    out.extend(degree2_family(arr).into_iter().step_by(3));
    Ok(out)
}

/// α⌣β − (−1)^{pq} β⌣α reduced modulo coboundaries, over catalog pairs.
pub fn graded_commutativity(arr: &Arc<Arrangement>, n: u32) -> Result<Vec<TableEntry>> {
    let cat = catalog(arr)?;
    let mut out = Vec::new();
    for (i, (na, a)) in cat.iter().enumerate() {
        for (nb, b) in cat.iter().skip(i) {
            let (p, q) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
            if p + q > 4 {
                continue;
            }
            let sign = if p * q % 2 == 0 { Rational::one() } else { -Rational::one() };
            let rhs = cup(b, a)?.scale(&sign);
            out.push(compare("cup", format!("{na} ⌣ {nb} = ±{nb} ⌣ {na}"), &cup(a, b)?, &rhs, n));
        }
    }
    Ok(out)
}

/// [α, β⌣γ] against [α,β]⌣γ + (−1)^{(p−1)q}β⌣[α,γ] for α of degree 1 and
/// β, γ of degree 1 with a computable left side.
pub fn leibniz_spot_check(arr: &Arc<Arrangement>, n: u32) -> Result<Vec<TableEntry>> {
    let mut firsts = vec![("Ê".to_string(), e_hat(arr))];
    for i in [0, arr.num_lines() - 1] {
        firsts.push((format!("∂{i}"), partial_derivation(arr, i)?.0));
    }
    let u = samples(arr.r()).pop().expect("samples");
    firsts.push(("ûD̂".to_string(), Cochain::single(Wedge::letter(Letter::D), &poly_elt(arr, &u))));
    let mut out = Vec::new();
    for (na, a) in &firsts {
        for (nb, b) in &firsts {
            for (nc, c) in &firsts {
                let lhs = bracket(a, &cup(b, c)?)?;
                let rhs = bracket_with_product(a, b, c)?;
                out.push(compare("bracket", format!("[{na}, {nb} ⌣ {nc}]"), &lhs, &rhs, n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_commute() {
        let a = Arrangement::example(3).unwrap();
        let p0 = partial_derivation(&a, 0).unwrap().0;
        let p2 = partial_derivation(&a, 2).unwrap().0;
        assert!(bracket(&p0, &p2).unwrap().is_zero());
    }

    #[test]
    fn omega2_self_bracket() {
        let a = Arrangement::example(3).unwrap();
        let b = bracket(&omega2(&a), &omega2(&a)).unwrap();
        assert!(is_coboundary(&b, 8).is_some(), "{b}");
    }
}
