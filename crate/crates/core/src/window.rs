//! Finite windows of the degree-0 subcomplex 𝒳 of A⊗ΛV*, cut out by
//! bounding the exponent of E, and the exact linear algebra on them.
//!
//! The differential never raises the E-exponent, so a window is a
//! subcomplex. Its own cohomology has spurious classes near the top
//! E-degree, because a cocycle of E-degree ≤ N may only be hit by a cochain
//! of larger E-degree. The dimensions reported here count window cocycles
//! modulo the coboundaries of the larger window N + slack, intersected with
//! the window:
//!
//! h^p = dim W^p − rank δ^p|W^p − (rank B − rank B_high),
//!
//! where B is δ^{p−1} on W_{N+slack}^{p−1} and B_high its projection to the
//! coordinates of E-degree above N.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::hochschild::{hh_d, Cochain};
use crate::linalg::{rank, solve_columns, sparse_row, SparseRow};
use crate::lincomb::LinComb;
use crate::ore::{Mono, OreElement};
use crate::rational::Rational;
use crate::report::DimsReport;
use crate::wedge::Wedge;

/// Truncation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    /// Largest E-exponent kept.
    pub n: u32,
    /// Extra E-degrees allowed for coboundary preimages.
    pub slack: u32,
    /// Largest admissible number of basis vectors in one degree.
    pub cap: usize,
}

impl TruncationWindow {
    pub const DEFAULT_N: u32 = 8;

    pub fn new(n: u32) -> Self {
        TruncationWindow { n, slack: 2, cap: 200_000 }
    }
}

impl Default for TruncationWindow {
    fn default() -> Self {
        Self::new(Self::DEFAULT_N)
    }
}

/// PBW monomials x^i y^j D^k of internal degree `deg`, times E^e for e ≤ n.
fn monomials_of_degree(r: u32, deg: i64, n: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    let deg = deg as u32;
    for k in 0..=deg / r {
        let rest = deg - r * k;
        for i in 0..=rest {
            for e in 0..=n {
                out.push(Mono::new(i, rest - i, k, e));
            }
        }
    }
    out
}

/// A basis of the window in one cohomological degree.
#[derive(Clone, Debug)]
pub struct WindowBasis {
    pub p: usize,
    pub elements: Vec<(Wedge, Mono)>,
    index: HashMap<(Wedge, Mono), usize>,
}

impl WindowBasis {
    /// Cochains `m⊗ŵ` with |ŵ| = p, internal degree `deg` and E-exponent ≤ n.
    pub fn new(r: u32, p: usize, deg: i64, n: u32) -> Self {
        let mut elements = Vec::new();
        for w in Wedge::all_of_len(p) {
            for m in monomials_of_degree(r, deg + w.degree(r) as i64, n) {
                elements.push((w, m));
            }
        }
        let index = elements.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        WindowBasis { p, elements, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, key: &(Wedge, Mono)) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Coordinates of a cochain; `None` if it leaves the window.
    pub fn coordinates(&self, c: &Cochain) -> Option<SparseRow> {
        let mut v = Vec::with_capacity(c.terms().len());
        for (k, x) in c.terms() {
            v.push((self.position(k)?, x.clone()));
        }
        Some(sparse_row(v))
    }

    pub fn cochain(&self, arr: &Arc<Arrangement>, i: usize) -> Cochain {
        let (w, m) = self.elements[i];
        Cochain::single(w, &OreElement::mono(arr, m, Rational::from(1)))
    }

    pub fn from_coordinates(&self, arr: &Arc<Arrangement>, x: &[Rational]) -> Cochain {
        let mut t = LinComb::new();
        for (i, v) in x.iter().enumerate() {
            t.add_term(self.elements[i], v.clone());
        }
        Cochain::from_terms(arr, t)
    }
}

fn check_cap(b: &WindowBasis, other: usize, cap: usize) -> Result<()> {
    if b.len() > cap || other > cap {
        return Err(Error::RankOverflow { rows: b.len(), cols: other, cap });
    }
    Ok(())
}

/// Images δ(b) of the basis vectors, as sparse rows keyed by (ŵ, m).
fn images(arr: &Arc<Arrangement>, b: &WindowBasis) -> Vec<LinComb<(Wedge, Mono)>> {
    (0..b.len())
        .map(|i| {
            let img = hh_d(b.p, &b.cochain(arr, i)).expect("degree matches");
            debug_assert!(img.e_degree().unwrap_or(0) <= b.elements[i].1.e);
            img.terms().clone()
        })
        .collect()
}

fn rows_in(target: &WindowBasis, imgs: &[LinComb<(Wedge, Mono)>], keep: impl Fn(&Mono) -> bool) -> Vec<SparseRow> {
    imgs.iter()
        .map(|t| {
            sparse_row(
                t.iter()
                    .filter(|((_, m), _)| keep(m))
                    .map(|(k, v)| (target.position(k).expect("differential stays in the window"), v.clone())),
            )
        })
        .collect()
}

fn require_r(arr: &Arrangement) -> Result<()> {
    if arr.r() < 3 {
        return Err(Error::SmallArrangement(arr.r()));
    }
    Ok(())
}

/// Rank data of the window in each degree.
struct DegreeRanks {
    dim: usize,
    rank_out: usize,
    image_in: usize,
}

fn degree_ranks(arr: &Arc<Arrangement>, p: usize, win: &TruncationWindow) -> Result<DegreeRanks> {
    let r = arr.r();
    let n = win.n;
    let here = WindowBasis::new(r, p, 0, n);
    let rank_out = if p < 4 {
        let next = WindowBasis::new(r, p + 1, 0, n);
        check_cap(&here, next.len(), win.cap)?;
        rank(rows_in(&next, &images(arr, &here), |_| true))
    } else {
        0
    };
    let image_in = if p > 0 {
        let prev = WindowBasis::new(r, p - 1, 0, n + win.slack);
        let big = WindowBasis::new(r, p, 0, n + win.slack);
        check_cap(&prev, big.len(), win.cap)?;
        let imgs = images(arr, &prev);
        let all = rank(rows_in(&big, &imgs, |_| true));
        let high = rank(rows_in(&big, &imgs, |m| m.e > n));
        all - high
    } else {
        0
    };
    Ok(DegreeRanks { dim: here.len(), rank_out, image_in })
}

/// dim H^p for p = 0..4 of the window-N degree-0 subcomplex, computed
/// modulo coboundaries from the slack window.
pub fn cohomology_dims(arr: &Arc<Arrangement>, win: &TruncationWindow) -> Result<[usize; 5]> {
    require_r(arr)?;
    let mut out = [0; 5];
    for (p, o) in out.iter_mut().enumerate() {
        let d = degree_ranks(arr, p, win)?;
        *o = d.dim - d.rank_out - d.image_in;
    }
    Ok(out)
}

/// The Hilbert series coefficients 1, r+2, 2r+3, r+2, 0.
pub fn expected_dims(r: u32) -> [usize; 5] {
    let r = r as usize;
    [1, r + 2, 2 * r + 3, r + 2, 0]
}

/// Dimensions at `N` and `N + 2`, with the stability flag.
pub fn dims_report(arr: &Arc<Arrangement>, win: &TruncationWindow) -> Result<DimsReport> {
    let dims = cohomology_dims(arr, win)?;
    let next = cohomology_dims(arr, &TruncationWindow { n: win.n + 2, ..*win })?;
    Ok(DimsReport {
        r: arr.r(),
        window: win.n,
        dims: dims.to_vec(),
        stable: dims == next,
        expected: expected_dims(arr.r()).to_vec(),
    })
}

/// Cohomology of the truncated subcomplex itself, without slack. Differs
/// from [`cohomology_dims`] by classes near the top E-degree.
pub fn naive_window_dims(arr: &Arc<Arrangement>, win: &TruncationWindow) -> Result<[usize; 5]> {
    require_r(arr)?;
    let plain = TruncationWindow { slack: 0, ..*win };
    let mut out = [0; 5];
    for (p, o) in out.iter_mut().enumerate() {
        let d = degree_ranks(arr, p, &plain)?;
        *o = d.dim - d.rank_out - d.image_in;
    }
    Ok(out)
}

/// A cochain η of E-degree ≤ N with δη = c, if one exists. `c` must be
/// internally homogeneous.
pub fn is_coboundary(c: &Cochain, n: u32) -> Option<Cochain> {
    let arr = c.arrangement();
    if c.is_zero() {
        return Some(Cochain::zero(arr));
    }
    let p = c.degree()?;
    if p == 0 {
        return None;
    }
    let deg = c.internal_degree()?;
    let n = n.max(c.e_degree().unwrap_or(0));
    let prev = WindowBasis::new(arr.r(), p - 1, deg, n);
    let here = WindowBasis::new(arr.r(), p, deg, n);
    let target = here.coordinates(c)?;
    let cols = rows_in(&here, &images(arr, &prev), |_| true);
    let x = solve_columns(&cols, &target)?;
    Some(prev.from_coordinates(arr, &x))
}

/// Rank of the span of the cocycles `cs` (all of degree p, internal degree 0)
/// modulo coboundaries of E-degree ≤ N, or `None` if some `c` leaves the window.
pub fn rank_mod_coboundaries(arr: &Arc<Arrangement>, cs: &[Cochain], n: u32) -> Option<usize> {
    let Some(p) = cs.iter().find_map(|c| c.degree()) else { return Some(0) };
    let e = cs.iter().filter_map(|c| c.e_degree()).max().unwrap_or(0);
    let n = n.max(e);
    let here = WindowBasis::new(arr.r(), p, 0, n);
    let mut rows = if p > 0 { rows_in(&here, &images(arr, &WindowBasis::new(arr.r(), p - 1, 0, n)), |_| true) } else { vec![] };
    let base = rank(rows.clone());
    for c in cs {
        if c.is_zero() {
            continue;
        }
        rows.push(here.coordinates(c)?);
    }
    Some(rank(rows) - base)
}

/// Whether the cocycles `cs` (all of degree p, internal degree 0) are
/// linearly independent modulo coboundaries of E-degree ≤ N.
pub fn independent_mod_coboundaries(arr: &Arc<Arrangement>, cs: &[Cochain], n: u32) -> bool {
    rank_mod_coboundaries(arr, cs, n) == Some(cs.len())
}

/// Outcome of [`hh1_basis_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hh1Basis {
    pub count: usize,
    pub cocycles: bool,
    pub independent: bool,
    pub spans: bool,
}

impl Hh1Basis {
    pub fn pass(&self) -> bool {
        self.cocycles && self.independent && self.spans
    }
}

/// The classes ∂_α for every line: cocycles, independent modulo
/// coboundaries at window N, and as many as dim H¹.
pub fn hh1_basis_check(arr: &Arc<Arrangement>, win: &TruncationWindow) -> Result<Hh1Basis> {
    require_r(arr)?;
    let mut reps = Vec::new();
    for i in 0..arr.num_lines() {
        reps.push(crate::hochschild::partial_derivation(arr, i)?.0);
    }
    let cocycles = reps.iter().all(crate::hochschild::is_cocycle);
    let independent = independent_mod_coboundaries(arr, &reps, win.n);
    let h1 = degree_ranks(arr, 1, win)?;
    let spans = h1.dim - h1.rank_out - h1.image_in == reps.len();
    Ok(Hh1Basis { count: reps.len(), cocycles, independent, spans })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::Letter;

    #[test]
    fn dims_r3() {
        let a = Arrangement::example(3).unwrap();
        assert_eq!(cohomology_dims(&a, &TruncationWindow::new(4)).unwrap(), [1, 5, 9, 5, 0]);
    }

    #[test]
    fn small_r_rejected() {
        let a = Arrangement::example(2);
        if let Ok(a) = a {
            assert!(matches!(cohomology_dims(&a, &TruncationWindow::new(2)), Err(Error::SmallArrangement(2))));
        }
    }

    #[test]
    fn x_fx_is_coboundary() {
        let a = Arrangement::example(3).unwrap();
        let xfx = a.f_x().mul_monomial(1, 0);
        let c = Cochain::single(Wedge::of(&[Letter::Y, Letter::D]), &OreElement::from_poly(&a, &xfx));
        let eta = is_coboundary(&c, 4).expect("coboundary");
        assert_eq!(hh_d(1, &eta).unwrap(), c);
        assert!(is_coboundary(&crate::hochschild::omega2(&a), 8).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let a = Arrangement::example(3).unwrap();
        let win = TruncationWindow { cap: 10, ..TruncationWindow::new(4) };
        assert!(matches!(cohomology_dims(&a, &win), Err(Error::RankOverflow { .. })));
    }
}
