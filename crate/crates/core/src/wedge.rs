//! Wedge monomials in the letters x < y < D < E.

use std::fmt;

use crate::ore::Letter;

/// A subset of {x, y, D, E} read as the wedge of its letters in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Wedge(u8);

impl Wedge {
    pub const EMPTY: Wedge = Wedge(0);
    pub const TOP: Wedge = Wedge(0b1111);

    pub fn bits(self) -> u8 {
        self.0
    }

    /// The wedge with the given bitmask, bit i standing for the i-th letter.
    pub fn from_bits(bits: u8) -> Wedge {
        Wedge(bits & 0b1111)
    }

    pub fn letter(l: Letter) -> Wedge {
        Wedge(1 << l.index())
    }

    /// The canonical wedge of `letters` and the sign of the sorting
    /// permutation, or `None` if a letter repeats.
    pub fn from_letters(letters: &[Letter]) -> Option<(i64, Wedge)> {
        let mut bits = 0u8;
        let mut sign = 1i64;
        for (i, a) in letters.iter().enumerate() {
            let b = 1 << a.index();
            if bits & b != 0 {
                return None;
            }
            bits |= b;
            for c in &letters[i + 1..] {
                if c < a {
                    sign = -sign;
                }
            }
        }
        Some((sign, Wedge(bits)))
    }

    /// Letters of `w` given in canonical order.
    pub fn of(letters: &[Letter]) -> Wedge {
        let (s, w) = Wedge::from_letters(letters).expect("distinct letters");
        assert_eq!(s, 1, "letters must be in canonical order");
        w
    }

    pub fn letters(self) -> Vec<Letter> {
        Letter::ALL.into_iter().filter(|l| self.contains(*l)).collect()
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 & (1 << l.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `self ∧ other` as a sign and canonical wedge.
    pub fn wedge(self, other: Wedge) -> Option<(i64, Wedge)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut sign = 1;
        for a in self.letters() {
            for b in other.letters() {
                if b < a {
                    sign = -sign;
                }
            }
        }
        Some((sign, Wedge(self.0 | other.0)))
    }

    /// The complement `c` and the sign with `self ∧ c = sign · TOP`.
    pub fn complement(self) -> (i64, Wedge) {
        let c = Wedge(!self.0 & 0b1111);
        let (s, _) = self.wedge(c).expect("disjoint");
        (s, c)
    }

    /// Sum of letter degrees (x, y: 1; D: r; E: 0).
    pub fn degree(self, r: u32) -> u32 {
        self.letters().iter().map(|l| l.degree(r)).sum()
    }

    /// All wedges of length `p`, in lexicographic order of their letters.
    pub fn all_of_len(p: usize) -> Vec<Wedge> {
        let mut v: Vec<Wedge> = (0u8..16).map(Wedge).filter(|w| w.len() == p).collect();
        v.sort_by_key(|w| w.letters());
        v
    }

    /// Rendering with hatted letters, for cochains.
    pub fn dual_name(self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.letters().iter().map(|l| format!("{}\u{302}", l.name())).collect::<Vec<_>>().join("∧")
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<_> = self.letters().iter().map(|l| l.name()).collect();
        write!(f, "{}", names.join("∧"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn signs() {
        assert_eq!(Wedge::from_letters(&[Y, X]), Some((-1, Wedge::of(&[X, Y]))));
        assert_eq!(Wedge::from_letters(&[E, X, D]), Some((1, Wedge::of(&[X, D, E]))));
        assert_eq!(Wedge::from_letters(&[X, X]), None);
        let (s, w) = Wedge::of(&[Y, E]).wedge(Wedge::of(&[X, D])).unwrap();
        assert_eq!((s, w), (-1, Wedge::TOP));
        assert_eq!(Wedge::of(&[Y]).complement(), (-1, Wedge::of(&[X, D, E])));
        assert_eq!(Wedge::all_of_len(2).len(), 6);
    }
}
