//! The subalgebra of HH•(A) generated by HH¹(A) and its Orlik–Solomon
//! presentation.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::diagonal::cup;
use crate::error::Result;
use crate::gerstenhaber::compare;
use crate::hochschild::{omega2, partial_derivation, Cochain};
use crate::linalg::{rank, sparse_row, SparseRow};
use crate::ore::{Letter, OreElement};
use crate::poly::CommPoly;
use crate::rational::Rational;
use crate::report::TableEntry;
use crate::wedge::Wedge;
use crate::window::rank_mod_coboundaries;

/// Sign of e_a ∧ e_b for disjoint bitmasks, with `a` on the left.
fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (b & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn subsets(n: u32, k: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|s| s.count_ones() == k).collect()
}

/// e_S ∧ Σ c_T e_T as a sparse row over the k-subsets.
fn left_mul(s: u32, v: &[(u32, i64)], index: &[u32]) -> SparseRow {
    sparse_row(v.iter().filter(|(t, _)| s & t == 0).map(|(t, c)| {
        let pos = index.binary_search(&(s | t)).expect("subset");
        (pos, Rational::from(c * wedge_sign(s, *t)))
    }))
}

/// Dimensions in degrees 0..=n of Λ(e_0, …, e_{n−1}) modulo the ideal
/// generated by e_ie_j + e_je_k + e_ke_i for all i < j < k.
pub fn abstract_dims(n: u32) -> Vec<usize> {
    let bit = |i: u32| 1u32 << i;
    let mut rels = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                rels.push(vec![(bit(i) | bit(j), 1), (bit(j) | bit(k), 1), (bit(i) | bit(k), -1)]);
            }
        }
    }
    (0..=n)
        .map(|d| {
            let index = subsets(n, d);
            if d < 2 {
                return index.len();
            }
            let rows: Vec<SparseRow> = subsets(n, d - 2)
                .into_iter()
                .flat_map(|s| rels.iter().map(move |r| (s, r)))
                .map(|(s, r)| left_mul(s, r, &index))
                .collect();
            index.len() - rank(rows)
        })
        .collect()
}

/// Outcome of [`orlik_solomon_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrlikSolomonReport {
    pub r: u32,
    pub triples: Vec<TableEntry>,
    pub abstract_dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub products_rank: Option<usize>,
    pub adjacent_rank: Option<usize>,
    pub degree3_zero: bool,
}

impl OrlikSolomonReport {
    pub fn pass(&self) -> bool {
        let r1 = Some(self.r as usize + 1);
        self.triples.iter().all(|t| t.pass)
            && self.abstract_dims[..4] == self.expected[..]
            && self.products_rank == r1
            && self.adjacent_rank == r1
            && self.degree3_zero
    }
}

/// Triple relations among the ∂⌣∂ products, the abstract dimensions, and
/// the ranks of the products modulo coboundaries at window `n`.
pub fn orlik_solomon_check(arr: &Arc<Arrangement>, n: u32) -> Result<OrlikSolomonReport> {
    let lines = arr.num_lines();
    let mut partials = Vec::new();
    for i in 0..lines {
        partials.push(partial_derivation(arr, i)?.0);
    }
    let mut prod = vec![vec![Cochain::zero(arr); lines]; lines];
    for i in 0..lines {
        for j in 0..lines {
            prod[i][j] = cup(&partials[i], &partials[j])?;
        }
    }
    let zero = Cochain::zero(arr);
    let mut triples = Vec::new();
    for k in 0..lines {
        for j in 0..k {
            for i in 0..j {
                let sum = &(&prod[i][j] + &prod[j][k]) + &prod[k][i];
                triples.push(compare("orlik-solomon", format!("∂{i}⌣∂{j} + ∂{j}⌣∂{k} + ∂{k}⌣∂{i} = 0"), &sum, &zero, n));
            }
        }
    }
    let all: Vec<Cochain> = (0..lines).flat_map(|i| (0..lines).map(move |j| (i, j))).map(|(i, j)| prod[i][j].clone()).collect();
    let adjacent: Vec<Cochain> = (0..lines - 1).map(|i| prod[i][i + 1].clone()).collect();
    let mut degree3_zero = true;
    for c in prod.iter().flatten() {
        for p in [&partials[0], &partials[lines - 1]] {
            let c = cup(c, p)?;
            if !c.is_zero() && rank_mod_coboundaries(arr, &[c], n) != Some(0) {
                degree3_zero = false;
            }
        }
    }
    let r = arr.r() as usize;
    Ok(OrlikSolomonReport {
        r: arr.r(),
        triples,
        abstract_dims: abstract_dims(lines as u32),
        expected: vec![1, r + 2, r + 1, 0],
        products_rank: rank_mod_coboundaries(arr, &all, n),
        adjacent_rank: rank_mod_coboundaries(arr, &adjacent, n),
        degree3_zero,
    })
}

/// A basis of the complement kω₂ ⊕ (S_{r+1} ⊕ S_1D)⊗ŷ∧D̂ of the
/// Orlik–Solomon part of HH², before the quotient by ⟨xF_x, xF_y, yF_y⟩.
pub fn hh2_complement(arr: &Arc<Arrangement>) -> Vec<Cochain> {
    let r = arr.r();
    let yd = Wedge::of(&[Letter::Y, Letter::D]);
    let mut out = vec![omega2(arr)];
    for i in 0..=r + 1 {
        let k = OreElement::from_poly(arr, &CommPoly::monomial(i, r + 1 - i, Rational::one()));
        out.push(Cochain::single(yd, &k));
    }
    for p in [CommPoly::x(), CommPoly::y()] {
        out.push(Cochain::single(yd, &(&OreElement::from_poly(arr, &p) * &OreElement::d(arr))));
    }
    out
}

/// Rank modulo coboundaries of ζ ↦ δ⌣ζ on the HH² complement, for
/// δ = Σ δ_i ∂_i.
pub fn cup_with_derivation_rank(arr: &Arc<Arrangement>, deltas: &[Rational], n: u32) -> Result<Option<usize>> {
    let mut delta = Cochain::zero(arr);
    for (i, c) in deltas.iter().enumerate() {
        if !c.is_zero() {
            delta = &delta + &partial_derivation(arr, i)?.0.scale(c);
        }
    }
    let mut images = Vec::new();
    for z in hh2_complement(arr) {
        images.push(cup(&delta, &z)?);
    }
    Ok(rank_mod_coboundaries(arr, &images, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstract_dims_small() {
        assert_eq!(abstract_dims(5), vec![1, 5, 4, 0, 0, 0]);
        assert_eq!(abstract_dims(3)[..3], [1, 3, 2]);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b100, 0b011), 1);
    }
}
