//! Sparse exact linear algebra over the rationals.
//!
//! Rank uses fraction-free elimination on rows scaled to primitive integer
//! vectors; solving uses rational echelon reduction followed by back
//! substitution.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse vector as `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Build a sparse row from unsorted entries, merging duplicates.
pub fn sparse_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseRow {
    let mut v: Vec<(usize, Rational)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += &x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn int_gcd(a: &Rational, b: &Rational) -> Rational {
    match (a.to_i64(), b.to_i64()) {
        (Some(x), Some(y)) => Rational::from(x.gcd(&y)),
        _ => Rational::from(a.numer().gcd(&b.numer())),
    }
}

/// Scale a row to a primitive integer vector with positive leading entry.
fn primitive(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut lcm = BigInt::one();
    for (_, v) in row.iter() {
        let d = v.denom();
        if !d.is_one() {
            lcm = lcm.lcm(&d);
        }
    }
    if !lcm.is_one() {
        let l = Rational::from(lcm);
        for e in row.iter_mut() {
            e.1 = &e.1 * &l;
        }
    }
    let mut g = Rational::zero();
    for (_, v) in row.iter() {
        g = if g.is_zero() { v.abs() } else { int_gcd(&g, v) };
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// `p·a − q·b` for sparse rows, dropping zeros.
fn combine(p: &Rational, a: &SparseRow, q: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, p * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(q * &b[j].1)));
            j += 1;
        } else {
            let v = p * &a[i].1 - q * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with fraction-free reduction.
#[derive(Default, Clone)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots; the result is zero iff `row`
    /// lies in their span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        primitive(&mut row);
        while let Some((lead, lv)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let pv = &p[0].1;
            let g = int_gcd(pv, &lv);
            row = combine(&(pv / &g), &row, &(&lv / &g), p);
            primitive(&mut row);
        }
        row
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        match row.first() {
            None => false,
            Some(&(lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solve `Σ_j x_j · columns[j] = target` for `x`, or `None` if inconsistent.
/// Columns and target are sparse vectors indexed by row position.
pub fn solve_columns(columns: &[SparseRow], target: &SparseRow) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut eqs: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            eqs.entry(*i).or_default().push((j, v.clone()));
        }
    }
    for (i, v) in target {
        eqs.entry(*i).or_default().push((n, v.clone()));
    }
    let mut keys: Vec<usize> = eqs.keys().copied().collect();
    keys.sort_unstable();
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for k in keys {
        let mut row = sparse_row(eqs.remove(&k).unwrap());
        while let Some((lead, lv)) = row.first().cloned() {
            if lead == n {
                return None;
            }
            match pivots.get(&lead) {
                Some(p) => row = combine(&Rational::one(), &row, &lv, p),
                None => {
                    let inv = lv.recip();
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    let mut x = vec![Rational::zero(); n];
    let mut leads: Vec<usize> = pivots.keys().copied().collect();
    leads.sort_unstable_by(|a, b| b.cmp(a));
    for lead in leads {
        let row = &pivots[&lead];
        let mut val = Rational::zero();
        for (c, v) in row.iter().skip(1) {
            if *c == n {
                val += v;
            } else {
                val -= &(v * &x[*c]);
            }
        }
        x[lead] = val;
    }
    Some(x)
}

/// Rank of a dense rational matrix given by rows.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    rank(rows.iter().map(|r| sparse_row(r.iter().cloned().enumerate())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rank_of_small_matrices() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(dense_rank(&rows), 2);
        let id: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
        assert_eq!(dense_rank(&id), 4);
        assert_eq!(dense_rank(&[vec![Rational::new(1, 3), Rational::new(1, 2)], vec![q(2), q(3)]]), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![sparse_row([(0, q(1)), (1, q(1))]), sparse_row([(1, q(2))])];
        let x = solve_columns(&cols, &sparse_row([(0, q(3)), (1, q(7))])).unwrap();
        assert_eq!(x, vec![q(3), q(2)]);
        assert!(solve_columns(&cols, &sparse_row([(2, q(1))])).is_none());
    }
}
