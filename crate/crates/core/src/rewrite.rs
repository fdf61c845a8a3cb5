//! Normal forms by rewriting words in the generators.
//!
//! Every out-of-order adjacent pair `ba` (with `a < b` in x < y < D < E) is
//! replaced by `ab` plus the lower-order term of the corresponding relation
//! until only PBW words remain. This is slower than [`OreElement`]
//! multiplication but shares no code with it.

use std::sync::Arc;

use num_traits::One;

use crate::arrangement::Arrangement;
use crate::lincomb::LinComb;
use crate::ore::{Letter, Mono, OreElement};
use crate::rational::Rational;

/// The lower-order term of `ba = ab + c` for `a < b`.
fn correction(arr: &Arrangement, b: Letter, a: Letter) -> Vec<(Vec<Letter>, Rational)> {
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

/// Normal form of a linear combination of words.
pub fn normalize(arr: &Arc<Arrangement>, words: LinComb<Vec<Letter>>) -> OreElement {
    let mut pending = words;
    let mut out = LinComb::new();
    while let Some((w, c)) = pending.pop_first() {
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => out.add_term(Mono::from_sorted_word(&w), c),
            Some(i) => {
                let (b, a) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                pending.add_term(swapped, c.clone());
                for (mid, k) in correction(arr, b, a) {
                    let mut nw = w[..i].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    pending.add_term(nw, &c * &k);
                }
            }
        }
    }
    OreElement::from_terms(arr, out)
}

/// Product computed by concatenating PBW words and rewriting.
pub fn mul_by_rewriting(u: &OreElement, v: &OreElement) -> OreElement {
    let mut words = LinComb::new();
    for (m1, c1) in u.terms() {
        for (m2, c2) in v.terms() {
            let mut w = m1.word();
            w.extend(m2.word());
            words.add_term(w, c1 * c2);
        }
    }
    normalize(u.arrangement(), words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_closed_form_on_generator_squares() {
        let a = Arrangement::example(3).unwrap();
        for l1 in Letter::ALL {
            for l2 in Letter::ALL {
                let u = OreElement::letter(&a, l1).pow(2);
                let v = OreElement::letter(&a, l2).pow(2);
                assert_eq!(mul_by_rewriting(&u, &v), &u * &v, "{l1:?}^2 · {l2:?}^2");
            }
        }
    }
}
