use logdiff::gerstenhaber::{graded_commutativity, leibniz_spot_check};
use logdiff::orlik_solomon::{abstract_dims, cup_with_derivation_rank};
use logdiff::window::{cohomology_dims, expected_dims, naive_window_dims};
use logdiff::{Arrangement, Rational, TruncationWindow};
use num_traits::{One, Zero};

#[test]
fn dims_are_stable_across_windows() {
    for r in [3, 4, 5] {
        let a = Arrangement::example(r).unwrap();
        for n in [3, 5, 7] {
            assert_eq!(cohomology_dims(&a, &TruncationWindow::new(n)).unwrap(), expected_dims(r), "r={r} N={n}");
        }
    }
}

#[test]
fn frozen_dims_for_five_lines_and_seven_lines() {
    assert_eq!(expected_dims(3), [1, 5, 9, 5, 0]);
    assert_eq!(expected_dims(5), [1, 7, 13, 7, 0]);
}

#[test]
fn plain_truncation_overcounts() {
    let a = Arrangement::example(3).unwrap();
    assert_eq!(naive_window_dims(&a, &TruncationWindow::new(4)).unwrap(), [1, 6, 14, 14, 5]);
}

#[test]
fn small_arrangements_are_rejected() {
    let a = Arrangement::example(2).unwrap();
    assert!(cohomology_dims(&a, &TruncationWindow::new(4)).is_err());
}

#[test]
fn cup_is_graded_commutative() {
    let a = Arrangement::example(3).unwrap();
    let rows = graded_commutativity(&a, 8).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|e| e.pass), "{rows:?}");
}

#[test]
fn bracket_is_a_graded_derivation_of_cup() {
    let a = Arrangement::example(3).unwrap();
    let rows = leibniz_spot_check(&a, 8).unwrap();
    assert_eq!(rows.len(), 64);
    let bad: Vec<_> = rows.iter().filter(|e| !e.pass).map(|e| &e.entry).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn orlik_solomon_dims_by_line_count() {
    for n in 3..=7u32 {
        let d = abstract_dims(n);
        assert_eq!(d[..4], [1, n as usize, n as usize - 1, 0]);
    }
}

#[test]
fn cup_with_derivation_depends_on_coefficient_sum() {
    let a = Arrangement::example(3).unwrap();
    let r = Rational::from;
    let balanced = [r(1), r(-1), r(0), r(2), r(-2)];
    assert_eq!(cup_with_derivation_rank(&a, &balanced, 6).unwrap(), Some(0));
    let unbalanced = [Rational::one(), Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    assert_eq!(cup_with_derivation_rank(&a, &unbalanced, 6).unwrap(), Some(5));
}
