//! The chain map ψ: 𝒫^∨ → 𝒫⊗A_σ exhibiting the twisted Calabi–Yau property.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::morphism::{AlgebraMorphism, PowerCache};
use crate::ore::{Letter, Mono, OreElement};
use crate::rational::Rational;
use crate::report::{Check, Report};
use crate::resolution::{d, dual_generator_d, nabla_f, nabla_tilde, BimoduleChain};
use crate::symmetry::modular_sigma;
use crate::wedge::Wedge;

/// ξ = Σ_{a+b=r+1} Σ_{s+t+1=b−1} (t+1)·c_a·y^s|y|x^a y^t, where F = Σ c_a x^a y^b.
pub fn xi(arr: &Arc<Arrangement>) -> BimoduleChain {
    let mut out = BimoduleChain::zero(arr);
    let wy = Wedge::letter(Letter::Y);
    for (a, b, c) in arr.f_terms() {
        if *b < 2 {
            continue;
        }
        for s in 0..=(b - 2) {
            let t = b - 2 - s;
            out.add_term((Mono::new(0, s, 0, 0), wy, Mono::new(*a, t, 0, 0)), c * Rational::from(t + 1));
        }
    }
    out
}

/// ζ = Σ c_a·x^{s'}y^s|x∧y|x^{t'}y^t over s+t+1 = b and s'+t'+1 = a.
pub fn zeta(arr: &Arc<Arrangement>) -> BimoduleChain {
    let mut out = BimoduleChain::zero(arr);
    let wxy = Wedge::of(&[Letter::X, Letter::Y]);
    for (a, b, c) in arr.f_terms() {
        for s in 0..*b {
            let t = b - 1 - s;
            for s1 in 0..*a {
                let t1 = a - 1 - s1;
                out.add_term((Mono::new(s1, s, 0, 0), wxy, Mono::new(t1, t, 0, 0)), c.clone());
            }
        }
    }
    out
}

/// ψ(1|ŵ|1) for a free generator of 𝒫^∨.
pub fn psi_generator(arr: &Arc<Arrangement>, w: Wedge) -> BimoduleChain {
    use Letter::*;
    let g = |ls: &[Letter]| BimoduleChain::generator(arr, Wedge::of(ls));
    let neg = |c: BimoduleChain| -c;
    let wx = Wedge::letter(X);
    let we = Wedge::letter(E);
    match w.letters().as_slice() {
        [X, Y, D, E] => g(&[]),
        [Y, D, E] => neg(g(&[X])),
        [X, D, E] => g(&[Y]),
        [X, Y, E] => neg(&g(&[D]) + &xi(arr)),
        [X, Y, D] => g(&[E]),
        [D, E] => neg(g(&[X, Y])),
        [X, D] => g(&[Y, E]),
        [Y, D] => neg(g(&[X, E])),
        [Y, E] => &g(&[X, D]) + &xi(arr).wedge_left(wx),
        [X, E] => &neg(g(&[Y, D])) + &zeta(arr),
        [X, Y] => neg(&g(&[D, E]) + &xi(arr).wedge_right(we)),
        [E] => g(&[X, Y, D]),
        [D] => neg(g(&[X, Y, E])),
        [Y] => &g(&[X, D, E]) + &xi(arr).wedge_left(wx).wedge_right(we),
        [X] => &neg(g(&[Y, D, E])) + &zeta(arr).wedge_right(we),
        [] => g(&[X, Y, D, E]),
        _ => unreachable!(),
    }
}

/// ψ extended by `ψ(a·g·b) = a·ψ(g)·σ(b)`.
pub fn psi_apply(sigma: &AlgebraMorphism, c: &BimoduleChain) -> BimoduleChain {
    let arr = c.arrangement().clone();
    let mut cache = PowerCache::new(sigma);
    let twisted = c.map_right(|m| cache.mono(m));
    twisted.extend_bilinear(|w| psi_generator(&arr, w))
}

/// Residual of `d₁(ξ) = ∇̃_y(F) − 1|F_y`.
pub fn xi_condition(arr: &Arc<Arrangement>) -> BimoduleChain {
    let lhs = d(1, &xi(arr)).expect("degree 1");
    let fy = BimoduleChain::from_elements(&OreElement::one(arr), Wedge::EMPTY, &OreElement::from_poly(arr, &arr.f_y()));
    let rhs = &nabla_tilde(arr, Letter::Y, Wedge::EMPTY) - &fy;
    &lhs - &rhs
}

/// Residual of `d₂(ζ) = ξy − yξ − 1|y|F_y − ∇̃_x^x(F) + ∇(F)`.
pub fn zeta_condition(arr: &Arc<Arrangement>) -> BimoduleChain {
    let y = OreElement::y(arr);
    let x_i = xi(arr);
    let lhs = d(2, &zeta(arr)).expect("degree 2");
    let yfy =
        BimoduleChain::from_elements(&OreElement::one(arr), Wedge::letter(Letter::Y), &OreElement::from_poly(arr, &arr.f_y()));
    let rhs = &(&(&(&x_i.right_mul(&y) - &x_i.left_mul(&y)) - &yfy) - &nabla_tilde(arr, Letter::X, Wedge::letter(Letter::X)))
        + &nabla_f(arr);
    &lhs - &rhs
}

/// Whether the matrices of ψ in dual degree `p` are triangular with unit
/// diagonal: the complement generator carries a coefficient ±1|1 and the
/// remaining off-diagonal support forms an acyclic graph.
pub fn triangular_in_degree(arr: &Arc<Arrangement>, p: usize) -> std::result::Result<(), String> {
    let gens = Wedge::all_of_len(p);
    let mut edges: BTreeMap<Wedge, BTreeSet<Wedge>> = BTreeMap::new();
    for w in &gens {
        let img = psi_generator(arr, *w);
        let (_, diag) = w.complement();
        let comp = img.component(diag);
        let unit = comp.len() == 1 && comp.iter().all(|((l, r), c)| l.is_one() && r.is_one() && (c.is_one() || (-c).is_one()));
        if !unit {
            return Err(format!("ψ(1|{}|1) has no unit coefficient on 1|{diag}|1", w.dual_name()));
        }
        let others: BTreeSet<Wedge> = img.support().into_iter().filter(|h| *h != diag).collect();
        edges.insert(diag, others);
    }
    // Kahn's algorithm over the generators of 𝒫 in degree 4 − p.
    let mut indeg: BTreeMap<Wedge, usize> = edges.keys().map(|k| (*k, 0)).collect();
    for outs in edges.values() {
        for h in outs {
            *indeg.entry(*h).or_insert(0) += 1;
        }
    }
    let mut ready: Vec<Wedge> = indeg.iter().filter(|(_, n)| **n == 0).map(|(k, _)| *k).collect();
    let mut seen = 0;
    while let Some(k) = ready.pop() {
        seen += 1;
        if let Some(outs) = edges.get(&k) {
            for h in outs {
                let n = indeg.get_mut(h).expect("node");
                *n -= 1;
                if *n == 0 {
                    ready.push(*h);
                }
            }
        }
    }
    if seen == indeg.len() {
        Ok(())
    } else {
        Err(format!("ψ in dual degree {p} has a cyclic correction pattern"))
    }
}

/// Checks the ξ/ζ conditions, d^∨∘d^∨ = 0, every square ψ∘d^∨ = d∘ψ on the
/// generators of 𝒫^∨ in degrees 0..3, and triangularity of ψ.
pub fn verify_cy_chain_iso(arr: &Arc<Arrangement>) -> Report {
    let sigma = modular_sigma(arr);
    verify_cy_chain_iso_with(arr, &sigma)
}

pub fn verify_cy_chain_iso_with(arr: &Arc<Arrangement>, sigma: &AlgebraMorphism) -> Report {
    let mut rep = Report::new();
    let res = |c: BimoduleChain| (!c.is_zero()).then(|| c.to_string());
    rep.push(Check::new("xi condition", "ξ", res(xi_condition(arr))));
    rep.push(Check::new("zeta condition", "ζ", res(zeta_condition(arr))));
    for p in 0..=3 {
        for w in Wedge::all_of_len(p) {
            let dv = dual_generator_d(arr, w);
            let label = format!("1|{}|1", w.dual_name());
            if p < 3 {
                let ddv = dv.extend_bilinear(|w2| dual_generator_d(arr, w2));
                rep.push(Check::new("dual d∘d", label.clone(), res(ddv)));
            }
            let lhs = psi_apply(sigma, &dv);
            let rhs = d(4 - p, &psi_generator(arr, w)).expect("degree");
            rep.push(Check::new("psi square", label, res(&lhs - &rhs)));
        }
    }
    for p in 0..=4 {
        let r = triangular_in_degree(arr, p);
        rep.push(Check::new("psi triangular", format!("dual degree {p}"), r.err()));
    }
    rep
}

/// The coefficient of `x^a y^b` with a + b = r + 1 in F.
pub fn f_coefficient(arr: &Arrangement, a: u32) -> Rational {
    arr.f_terms().iter().find(|(i, _, _)| *i == a).map(|(_, _, c)| c.clone()).unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_and_zeta_conditions() {
        for n in 3..=4 {
            let a = Arrangement::example(n).unwrap();
            assert!(xi_condition(&a).is_zero(), "{}", xi_condition(&a));
            assert!(zeta_condition(&a).is_zero(), "{}", zeta_condition(&a));
        }
    }

    #[test]
    fn top_generator_goes_to_unit() {
        let a = Arrangement::example(3).unwrap();
        assert_eq!(psi_generator(&a, Wedge::TOP), BimoduleChain::generator(&a, Wedge::EMPTY));
    }

    #[test]
    fn squares_commute() {
        let a = Arrangement::example(3).unwrap();
        let rep = verify_cy_chain_iso(&a);
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
