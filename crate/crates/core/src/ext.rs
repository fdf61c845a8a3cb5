//! Ext between the one-dimensional modules M_λ, on which x, y, D act by 0
//! and E by λ.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::linalg::dense_rank;
use crate::ore::{Letter, Mono};
use crate::rational::Rational;
use crate::resolution::{generator_d, BimoduleChain};
use crate::wedge::Wedge;

/// The parameter λ of M_λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimModuleParam {
    pub lambda: Rational,
}

/// The value of a PBW monomial on the generator of M_λ.
pub fn character(m: &Mono, lambda: &Rational) -> Rational {
    if m.x > 0 || m.y > 0 || m.d > 0 {
        Rational::zero()
    } else {
        lambda.pow(m.e)
    }
}

/// The differentials δ⁰…δ³ of Hom_A(𝒫⊗_A M_λ, M_μ) as dense matrices,
/// written out in the bases 1; x̂,ŷ,D̂,Ê; x̂ŷ,x̂Ê,ŷÊ,x̂D̂,ŷD̂,D̂Ê;
/// x̂ŷD̂,x̂ŷÊ,x̂D̂Ê,ŷD̂Ê; x̂ŷD̂Ê. Row i of δ^p is the image of basis element i.
pub fn explicit_differentials(r: u32, lambda: &Rational, mu: &Rational) -> [Vec<Vec<Rational>>; 4] {
    let z = Rational::zero;
    let r = Rational::from(r);
    let one = Rational::one();
    let two = Rational::from(2);
    let d0 = vec![vec![z(), z(), z(), mu - lambda]];
    // x̂ ↦ (λ+1−μ) x̂Ê, ŷ ↦ (λ+1−μ) ŷÊ, D̂ ↦ (λ+r−μ) D̂Ê
    let d1 = vec![
        vec![z(), lambda + &one - mu, z(), z(), z(), z()],
        vec![z(), z(), lambda + &one - mu, z(), z(), z()],
        vec![z(), z(), z(), z(), z(), lambda + &r - mu],
        vec![z(); 6],
    ];
    // x̂ŷ ↦ (μ−λ−2) x̂ŷÊ, x̂D̂ ↦ (μ−λ−r−1) x̂D̂Ê, ŷD̂ ↦ (μ−λ−r−1) ŷD̂Ê
    let d2 = vec![
        vec![z(), mu - lambda - &two, z(), z()],
        vec![z(); 4],
        vec![z(); 4],
        vec![z(), z(), mu - lambda - &r - &one, z()],
        vec![z(), z(), z(), mu - lambda - &r - &one],
        vec![z(); 4],
    ];
    let d3 = vec![vec![lambda + &r + &two - mu], vec![z()], vec![z()], vec![z()]];
    [d0, d1, d2, d3]
}

fn dims_from(ranks: [usize; 4]) -> [usize; 5] {
    let sizes = [1usize, 4, 6, 4, 1];
    let mut out = [0; 5];
    for p in 0..5 {
        let ker = sizes[p] - if p < 4 { ranks[p] } else { 0 };
        let im = if p > 0 { ranks[p - 1] } else { 0 };
        out[p] = ker - im;
    }
    out
}

/// dim Ext^p_A(M_λ, M_μ) for p = 0..4, from the explicit matrices.
pub fn ext_one_dim(lambda: &Rational, mu: &Rational, arr: &Arrangement) -> [usize; 5] {
    let ds = explicit_differentials(arr.r(), lambda, mu);
    dims_from(ds.map(|m| dense_rank(&m)))
}

/// The order of the basis used by [`explicit_differentials`] in each degree.
pub fn ext_basis(p: usize) -> Vec<Wedge> {
    use Letter::*;
    let ls: Vec<Vec<Letter>> = match p {
        0 => vec![vec![]],
        1 => vec![vec![X], vec![Y], vec![D], vec![E]],
        2 => vec![vec![X, Y], vec![X, E], vec![Y, E], vec![X, D], vec![Y, D], vec![D, E]],
        3 => vec![vec![X, Y, D], vec![X, Y, E], vec![X, D, E], vec![Y, D, E]],
        4 => vec![vec![X, Y, D, E]],
        _ => vec![],
    };
    ls.iter().map(|l| Wedge::of(l)).collect()
}

/// The same differentials derived from the resolution: a term `c·a|w|b` of
/// d(1|w'|1) contributes `c·χ_μ(a)·χ_λ(b)` to the entry (w, w').
pub fn derived_differentials(arr: &Arc<Arrangement>, lambda: &Rational, mu: &Rational) -> [Vec<Vec<Rational>>; 4] {
    std::array::from_fn(|p| {
        let rows = ext_basis(p);
        let cols = ext_basis(p + 1);
        let mut m = vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (j, w2) in cols.iter().enumerate() {
            let img: BimoduleChain = generator_d(arr, *w2);
            for ((a, w, b), c) in img.terms() {
                let i = rows.iter().position(|x| x == w).expect("basis");
                m[i][j] += c * &character(a, mu) * character(b, lambda);
            }
        }
        m
    })
}

/// dim Ext^p via [`derived_differentials`].
pub fn ext_one_dim_derived(arr: &Arc<Arrangement>, lambda: &Rational, mu: &Rational) -> [usize; 5] {
    dims_from(derived_differentials(arr, lambda, mu).map(|m| dense_rank(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_and_identity() {
        let a = Arrangement::example(3).unwrap();
        let l = Rational::new(2, 7);
        assert_eq!(ext_one_dim(&l, &(&l + Rational::from(5)), &a), [0, 0, 0, 1, 1]);
        assert_eq!(ext_one_dim(&l, &l, &a)[0], 1);
    }

    #[test]
    fn explicit_matches_derived() {
        let a = Arrangement::example(3).unwrap();
        for (l, m) in [(0, 1), (0, 0), (1, 3), (2, 7), (-1, 4), (0, 5)] {
            let (l, m) = (Rational::from(l), Rational::from(m));
            let e = explicit_differentials(3, &l, &m);
            let g = derived_differentials(&a, &l, &m);
            assert_eq!(e, g, "λ={l} μ={m}");
        }
    }
}
