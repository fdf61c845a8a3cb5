use std::sync::Arc;

use logdiff::hochschild::{hh_d, hh_d_via_resolution, homotopy_defect};
use logdiff::resolution::{augment, d};
use logdiff::{Arrangement, BimoduleChain, Cochain, Mono, OreElement, Rational, Wedge};
use proptest::prelude::*;

fn arr() -> Arc<Arrangement> {
    Arrangement::example(3).unwrap()
}

fn mono(depth: u32) -> impl Strategy<Value = Mono> {
    (0..=depth, 0..=depth, 0..=depth, 0..=depth).prop_map(|(x, y, d, e)| Mono::new(x, y, d, e))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn element(depth: u32) -> impl Strategy<Value = Vec<(Mono, Rational)>> {
    prop::collection::vec((mono(depth), coeff()), 1..4)
}

fn build(a: &Arc<Arrangement>, terms: &[(Mono, Rational)]) -> OreElement {
    let mut u = OreElement::zero(a);
    for (m, c) in terms {
        u.add_term(*m, c.clone());
    }
    u
}

fn cochain(a: &Arc<Arrangement>, p: usize, parts: &[(usize, Vec<(Mono, Rational)>)]) -> Cochain {
    let wedges = Wedge::all_of_len(p);
    let mut c = Cochain::zero(a);
    for (i, terms) in parts {
        c.add_component(wedges[i % wedges.len()], &build(a, terms));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_associative(u in element(2), v in element(2), w in element(2)) {
        let a = arr();
        let (u, v, w) = (build(&a, &u), build(&a, &v), build(&a, &w));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn multiplication_distributes(u in element(2), v in element(2), w in element(2)) {
        let a = arr();
        let (u, v, w) = (build(&a, &u), build(&a, &v), build(&a, &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
    }

    #[test]
    fn cochain_differential_squares_to_zero(p in 0usize..3, parts in prop::collection::vec((0usize..6, element(2)), 1..3)) {
        let a = arr();
        let c = cochain(&a, p, &parts);
        let dc = hh_d(p, &c).unwrap();
        prop_assert!(hh_d(p + 1, &dc).unwrap().is_zero());
        prop_assert_eq!(dc, hh_d_via_resolution(p, &c).unwrap());
    }

    #[test]
    fn homotopy_contracts_to_euler_action(p in 0usize..5, parts in prop::collection::vec((0usize..6, element(3)), 1..3)) {
        let a = arr();
        let c = cochain(&a, p, &parts);
        prop_assert!(homotopy_defect(p, &c).unwrap().is_zero());
    }

    #[test]
    fn resolution_is_a_complex(l in mono(2), r in mono(2), p in 1usize..5, i in 0usize..6) {
        let a = arr();
        let ws = Wedge::all_of_len(p);
        let c = BimoduleChain::tensor(&a, l, ws[i % ws.len()], r, Rational::from(1));
        let dc = d(p, &c).unwrap();
        if p == 1 {
            prop_assert!(augment(&dc).unwrap().is_zero());
        } else {
            prop_assert!(d(p - 1, &dc).unwrap().is_zero());
        }
    }
}

#[test]
fn larger_arrangements_multiply_consistently() {
    for r in [4, 5] {
        let a = Arrangement::example(r).unwrap();
        assert!(logdiff::ore::action_mismatches(&a, 3, 6).is_empty());
    }
}
