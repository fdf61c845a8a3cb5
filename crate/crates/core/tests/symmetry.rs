use std::sync::Arc;

use logdiff::error::NotNormalReason;
use logdiff::symmetry::{
    exp_ad, exp_ad_series, graded_auto, is_normal, normal_auto, normal_auto_series, semidirect_check, semidirect_check_with,
    verify_modular, GradedAuto, NormalElementWitness,
};
use logdiff::{Arrangement, CommPoly, Error, LinearForm, OreElement, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arr() -> Arc<Arrangement> {
    Arrangement::example(3).unwrap()
}

fn symmetric() -> Arc<Arrangement> {
    let forms = [(1, 0), (0, 1), (1, 1), (1, -1), (1, -2), (2, -1)];
    Arrangement::build(forms.iter().map(|&(a, b)| LinearForm::int(a, b)).collect()).unwrap()
}

fn swap() -> GradedAuto {
    GradedAuto {
        m: [[Rational::zero(), Rational::one()], [Rational::one(), Rational::zero()]],
        e: Rational::one(),
        v: Rational::from(3),
        phi0: CommPoly::monomial(2, 2, Rational::one()),
    }
}

fn poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..=3, 0u32..=3, -5i64..=5), 1..5)
}

fn to_poly(terms: &[(u32, u32, i64)]) -> CommPoly {
    let mut p = CommPoly::zero();
    for &(i, j, c) in terms {
        p.add_term(i, j, Rational::from(c));
    }
    p
}

fn witness(lines: usize) -> impl Strategy<Value = NormalElementWitness> {
    (1i64..=7, prop::collection::vec(0u32..=2, lines))
        .prop_map(|(l, exponents)| NormalElementWitness { lambda: Rational::from(l), exponents })
}

#[test]
fn swap_is_an_automorphism_with_inverse() {
    let a = symmetric();
    let g = swap();
    let t = graded_auto(&a, &g).unwrap();
    assert!(t.respects_relations());
    let inv = graded_auto(&a, &g.inverse(&a).unwrap()).unwrap();
    assert_eq!(t.compose(&inv), logdiff::AlgebraMorphism::identity(&a));
    assert_eq!(inv.compose(&t), logdiff::AlgebraMorphism::identity(&a));
}

#[test]
fn swap_semidirect_law() {
    let a = symmetric();
    let f = CommPoly::monomial(1, 2, Rational::one());
    assert_eq!(semidirect_check(&a, &swap(), &f), Ok(true));
    assert_eq!(semidirect_check_with(&a, &swap(), &f, &f), Ok(false));
}

#[test]
fn swap_is_rejected_on_an_asymmetric_arrangement() {
    assert!(matches!(graded_auto(&arr(), &swap()), Err(Error::ConditionFails(_))));
}

#[test]
fn modular_automorphism_for_several_arrangements() {
    for r in [3, 4, 5] {
        assert!(verify_modular(&Arrangement::example(r).unwrap(), 4).pass());
    }
    assert!(verify_modular(&symmetric(), 4).pass());
}

#[test]
fn rejection_reasons() {
    let a = arr();
    let reason = |u: OreElement| match is_normal(&a, &u) {
        Err(Error::NotNormal { reason, .. }) => Some(reason),
        _ => None,
    };
    assert_eq!(reason(OreElement::zero(&a)), Some(NotNormalReason::Zero));
    assert_eq!(reason(&OreElement::x(&a) + &OreElement::d(&a)), Some(NotNormalReason::NotInS));
    let x2y2 = &CommPoly::monomial(2, 0, Rational::one()) + &CommPoly::monomial(0, 2, Rational::one());
    assert_eq!(reason(OreElement::from_poly(&a, &x2y2)), Some(NotNormalReason::NonSplitFactor));
    assert_eq!(reason(OreElement::from_poly(&a, &LinearForm::int(1, 1).to_poly())), Some(NotNormalReason::ForeignLine));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_ad_closed_form_matches_series(f in poly()) {
        let a = arr();
        let f = OreElement::from_poly(&a, &to_poly(&f));
        prop_assert_eq!(exp_ad(&a, &f).unwrap(), exp_ad_series(&a, &f, 32).unwrap());
    }

    #[test]
    fn exp_ad_is_additive(f in poly(), g in poly()) {
        let a = arr();
        let (f, g) = (to_poly(&f), to_poly(&g));
        let ef = exp_ad(&a, &OreElement::from_poly(&a, &f)).unwrap();
        let eg = exp_ad(&a, &OreElement::from_poly(&a, &g)).unwrap();
        let sum = exp_ad(&a, &OreElement::from_poly(&a, &(&f + &g))).unwrap();
        prop_assert_eq!(ef.compose(&eg), sum);
    }

    #[test]
    fn normal_autos_compose(u in witness(5), v in witness(5)) {
        let a = arr();
        let uv = NormalElementWitness {
            lambda: &u.lambda * &v.lambda,
            exponents: u.exponents.iter().zip(&v.exponents).map(|(i, j)| i + j).collect(),
        };
        let tu = normal_auto(&a, &u).unwrap();
        let tv = normal_auto(&a, &v).unwrap();
        prop_assert_eq!(tu.compose(&tv), normal_auto(&a, &uv).unwrap());
    }

    #[test]
    fn normal_auto_twists_multiplication(w in witness(5), m in (0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2)) {
        let a = arr();
        let t = normal_auto(&a, &w).unwrap();
        prop_assert_eq!(&t, &normal_auto_series(&a, &w).unwrap());
        let u = w.element(&a);
        let g = OreElement::mono(&a, logdiff::Mono::new(m.0, m.1, m.2, m.3), Rational::one());
        prop_assert_eq!(&u * &g, &t.apply(&g) * &u);
    }

    #[test]
    fn is_normal_round_trips(w in witness(5)) {
        let a = arr();
        prop_assert_eq!(is_normal(&a, &w.element(&a)).unwrap(), w);
    }

    #[test]
    fn scaling_autos_satisfy_semidirect_law(t in 1i64..=4, v in -3i64..=3, f in poly(), phi in prop::collection::vec(-3i64..=3, 4)) {
        let a = arr();
        let t = Rational::from(t);
        let mut phi0 = CommPoly::zero();
        for (i, c) in phi.iter().enumerate() {
            phi0.add_term(i as u32, 3 - i as u32, Rational::from(*c));
        }
        let g = GradedAuto {
            m: [[t.clone(), Rational::zero()], [Rational::zero(), t.clone()]],
            e: t.pow(3),
            v: Rational::from(v),
            phi0,
        };
        prop_assert_eq!(semidirect_check(&a, &g, &to_poly(&f)), Ok(true));
    }
}
