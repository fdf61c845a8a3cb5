//! Verification suites run by the CLI.

use std::sync::Arc;

use logdiff::arrangement::is_square_free;
use logdiff::calabi_yau::verify_cy_chain_iso;
use logdiff::comparison::{bar_d, phi, phi_generator};
use logdiff::diagonal::delta_defect;
use logdiff::ext::{ext_one_dim, ext_one_dim_derived};
use logdiff::gerstenhaber::{bracket_table, cup_table, graded_commutativity, leibniz_spot_check};
use logdiff::hochschild::{hh_d, hh_d_via_resolution, homotopy_defect};
use logdiff::ore::{action_mismatches, Mono};
use logdiff::orlik_solomon::orlik_solomon_check;
use logdiff::report::{Check, Report, TableEntry};
use logdiff::resolution::{d, verify_complex};
use logdiff::rewrite::mul_by_rewriting;
use logdiff::symmetry::{
    exp_ad, exp_ad_series, graded_auto, is_normal, modular_sigma, normal_auto, normal_auto_series, semidirect_check,
    sigma_against_partials, verify_modular, GradedAuto, NormalElementWitness,
};
use logdiff::window::{dims_report, hh1_basis_check};
use logdiff::{Arrangement, BimoduleChain, Cochain, CommPoly, OreElement, Rational, TruncationWindow, Wedge};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const ALL: [&str; 6] = ["base", "ore", "resolution", "hochschild", "gerstenhaber", "symmetry"];

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub window: u32,
    pub depth: u32,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteResult {
    fn new(name: &str, rep: Report) -> SuiteResult {
        SuiteResult { name: name.to_string(), pass: rep.pass(), checks: rep.checks }
    }
}

pub fn run(name: &str, arr: &Arc<Arrangement>, s: &Settings) -> SuiteResult {
    let rep = match name {
        "base" => base(arr),
        "ore" => ore(arr, s),
        "resolution" => resolution(arr),
        "hochschild" => hochschild(arr, s),
        "gerstenhaber" => gerstenhaber(arr, s),
        "symmetry" => symmetry(arr, s),
        "autos" => autos(arr, s),
        "calabi-yau" => calabi_yau(arr, s),
        _ => unreachable!("suite names are validated before running"),
    };
    SuiteResult::new(name, rep)
}

fn check(rep: &mut Report, name: &str, generator: impl Into<String>, pass: bool, detail: impl FnOnce() -> String) {
    rep.push(Check::from_bool(name, generator, pass, detail));
}

fn from_result<T>(rep: &mut Report, name: &str, generator: &str, r: logdiff::Result<T>, f: impl FnOnce(T) -> Option<String>) {
    let residual = match r {
        Ok(v) => f(v),
        Err(e) => Some(e.to_string()),
    };
    rep.push(Check::new(name, generator, residual));
}

fn table_rows(rep: &mut Report, rows: logdiff::Result<Vec<TableEntry>>, name: &str) {
    match rows {
        Ok(rows) => {
            for e in rows {
                let detail = format!("lhs {} rhs {}", e.lhs, e.rhs);
                check(rep, &e.table, e.entry, e.pass, || detail);
            }
        }
        Err(e) => rep.push(Check::new(name, "table", Some(e.to_string()))),
    }
}

fn base(arr: &Arc<Arrangement>) -> Report {
    let mut rep = Report::new();
    let q = arr.q();
    check(&mut rep, "Q is square-free", "Q", is_square_free(q), || q.to_string());
    let r = arr.r();
    let y_top = CommPoly::monomial(0, r + 1, Rational::one());
    let rebuilt = &arr.fbar().mul_monomial(1, 0) + &y_top;
    check(&mut rep, "F = xF̄ + y^(r+1)", "F", &rebuilt == arr.f(), || format!("{rebuilt} vs {}", arr.f()));
    for (i, f) in arr.forms().iter().enumerate() {
        let ok = q.divide_exact(f).is_ok();
        check(&mut rep, "α divides Q", format!("α{i} = {f}"), ok, || "not divisible".into());
    }
    let euler = &q.partial_x().mul_monomial(1, 0) + &q.partial_y().mul_monomial(0, 1);
    let want = q.scale(&Rational::from(r + 2));
    check(&mut rep, "xQ_x + yQ_y = (r+2)Q", "Q", euler == want, || euler.to_string());
    check(&mut rep, "F/α_i independent in S_r", "quotients", arr.quotient_basis_check(), || "dependent".into());
    rep
}

fn ore(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = Report::new();
    let depth = s.depth.min(6);
    let bad = action_mismatches(arr, depth, depth + 4);
    check(&mut rep, "product agrees with the action on S", format!("exponent sum ≤ {depth}"), bad.is_empty(), || {
        format!("{} mismatching pairs, first {:?}", bad.len(), bad.first())
    });
    let monos = Mono::all_up_to(depth.min(3));
    let mut disagree = Vec::new();
    for u in &monos {
        for v in &monos {
            let a = OreElement::mono(arr, *u, Rational::one());
            let b = OreElement::mono(arr, *v, Rational::one());
            if &a * &b != mul_by_rewriting(&a, &b) {
                disagree.push((*u, *v));
            }
        }
    }
    check(&mut rep, "product agrees with word rewriting", format!("{} pairs", monos.len().pow(2)), disagree.is_empty(), || {
        format!("{disagree:?}")
    });
    let (x, y, dd, e) = (OreElement::x(arr), OreElement::y(arr), OreElement::d(arr), OreElement::e(arr));
    let rel = |name: &str, lhs: OreElement, rhs: OreElement, rep: &mut Report| {
        check(rep, "relation", name, lhs == rhs, || format!("{lhs} vs {rhs}"));
    };
    rel("[D, x] = 0", dd.ad(&x), OreElement::zero(arr), &mut rep);
    rel("[D, y] = F", dd.ad(&y), OreElement::from_poly(arr, arr.f()), &mut rep);
    rel("[E, x] = x", e.ad(&x), x.clone(), &mut rep);
    rel("[E, y] = y", e.ad(&y), y.clone(), &mut rep);
    rel("[E, D] = rD", e.ad(&dd), dd.scale(&Rational::from(arr.r())), &mut rep);
    rep
}

fn resolution(arr: &Arc<Arrangement>) -> Report {
    let mut rep = verify_complex(arr);
    for l in [Rational::zero(), Rational::new(1, 2), Rational::from(-3)] {
        let mu = &l + &Rational::from(arr.r() + 2);
        let dims = ext_one_dim(&l, &mu, arr);
        let derived = ext_one_dim_derived(arr, &l, &mu);
        check(
            &mut rep,
            "Ext(k_λ, k_λ+r+2) = (0,0,0,1,1)",
            format!("λ = {l}"),
            dims == [0, 0, 0, 1, 1] && derived == dims,
            || format!("explicit {dims:?}, from the resolution {derived:?}"),
        );
    }
    rep
}

fn hochschild(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = Report::new();
    let win = TruncationWindow::new(s.window);
    match dims_report(arr, &win) {
        Ok(d) => check(
            &mut rep,
            "HH dimensions",
            format!("window {}: dims {:?}", s.window, d.dims),
            d.dims == d.expected && d.stable,
            || format!("expected {:?}, stable {}", d.expected, d.stable),
        ),
        Err(e) => rep.push(Check::new("HH dimensions", format!("window {}", s.window), Some(e.to_string()))),
    }
    from_result(&mut rep, "HH¹ basis ∂_α", &format!("window {}", s.window), hh1_basis_check(arr, &win), |b| {
        (!b.pass() || b.count != arr.num_lines()).then(|| format!("{b:?}"))
    });
    let monos = Mono::all_up_to(s.depth.min(3));
    for p in 0..=4 {
        let mut bad = Vec::new();
        for w in Wedge::all_of_len(p) {
            for m in &monos {
                let c = Cochain::single(w, &OreElement::mono(arr, *m, Rational::one()));
                let ok = matches!(homotopy_defect(p, &c), Ok(z) if z.is_zero())
                    && (p == 4 || matches!((hh_d(p, &c), hh_d_via_resolution(p, &c)), (Ok(a), Ok(b)) if a == b));
                if !ok {
                    bad.push(format!("{m}⊗{w}"));
                }
            }
        }
        check(&mut rep, "ds + sd = γ and δ = (−)∘d", format!("degree {p}"), bad.is_empty(), || bad.join(", "));
    }
    rep
}

fn gerstenhaber(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = Report::new();
    for p in 2..=3 {
        for w in Wedge::all_of_len(p) {
            let lhs = phi_generator(arr, w).map(|c| bar_d(&c));
            let rhs = d(p, &BimoduleChain::generator(arr, w)).and_then(|c| phi(p - 1, &c));
            let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
            check(&mut rep, "φ is a chain map", w.to_string(), ok, || "d_bar φ ≠ φ d".into());
        }
    }
    for p in 1..=4 {
        for w in Wedge::all_of_len(p) {
            from_result(&mut rep, "Δ is a chain map", &w.to_string(), delta_defect(arr, w), |z| {
                (!z.is_zero()).then(|| format!("{} defect terms", z.terms().len()))
            });
        }
    }
    table_rows(&mut rep, cup_table(arr, s.window), "cup table");
    table_rows(&mut rep, graded_commutativity(arr, s.window), "graded commutativity");
    table_rows(&mut rep, bracket_table(arr, s.window), "bracket table");
    table_rows(&mut rep, leibniz_spot_check(arr, s.window), "Leibniz");
    match orlik_solomon_check(arr, s.window) {
        Ok(os) => {
            let summary = format!(
                "dims {:?} expected {:?}, ranks {:?}/{:?}, degree 3 zero {}",
                os.abstract_dims, os.expected, os.products_rank, os.adjacent_rank, os.degree3_zero
            );
            let pass = os.pass();
            table_rows(&mut rep, Ok(os.triples), "Orlik–Solomon");
            check(&mut rep, "Orlik–Solomon presentation", "HH¹ subalgebra", pass, || summary);
        }
        Err(e) => rep.push(Check::new("Orlik–Solomon presentation", "HH¹ subalgebra", Some(e.to_string()))),
    }
    rep
}

fn symmetry(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = autos(arr, s);
    rep.extend(calabi_yau(arr, s));
    rep
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> CommPoly {
    let mut p = CommPoly::zero();
    for d in 0..=deg {
        for i in 0..=d {
            if rng.gen_bool(0.5) {
                p.add_term(i, d - i, rational(rng));
            }
        }
    }
    p
}

pub fn autos(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for k in 0..8 {
        let f = OreElement::from_poly(arr, &random_poly(&mut rng, 3));
        let ok = matches!((exp_ad(arr, &f), exp_ad_series(arr, &f, 32)), (Ok(a), Ok(b)) if a == b);
        check(&mut rep, "exp ad(f) closed form = series", format!("sample {k}: f = {f}"), ok, || "differs".into());
    }
    for k in 0..4 {
        let t = Rational::from(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut phi0 = CommPoly::zero();
        for i in 0..=arr.r() {
            phi0.add_term(i, arr.r() - i, rational(&mut rng));
        }
        let g = GradedAuto {
            m: [[t.clone(), Rational::zero()], [Rational::zero(), t.clone()]],
            e: t.pow(arr.r()),
            v: rational(&mut rng),
            phi0,
        };
        let f = random_poly(&mut rng, 3);
        let ok = graded_auto(arr, &g).is_ok_and(|m| m.respects_relations()) && semidirect_check(arr, &g, &f) == Ok(true);
        check(&mut rep, "exp ad(f)∘θ₀ = θ₀∘exp ad(θ₀⁻¹f)", format!("sample {k}: t = {t}"), ok, || "fails".into());
    }
    for k in 0..8 {
        let w = NormalElementWitness {
            lambda: Rational::from(rng.gen_range(1..=9)),
            exponents: (0..arr.num_lines()).map(|_| rng.gen_range(0..=2)).collect(),
        };
        let u = w.element(arr);
        let found = is_normal(arr, &u);
        let closed = normal_auto(arr, &w);
        let series = normal_auto_series(arr, &w);
        let twist =
            closed.as_ref().is_ok_and(|t| [OreElement::d(arr), OreElement::e(arr)].iter().all(|g| &u * g == &t.apply(g) * &u));
        let ok = found.as_ref() == Ok(&w) && twist && matches!((&closed, &series), (Ok(a), Ok(b)) if a == b);
        check(&mut rep, "normal element and θ_u", format!("sample {k}: exponents {:?}", w.exponents), ok, || {
            format!("{found:?}")
        });
    }
    rep
}

pub fn calabi_yau(arr: &Arc<Arrangement>, s: &Settings) -> Report {
    let mut rep = Report::new();
    let sigma = modular_sigma(arr);
    check(&mut rep, "σ respects the relations", "σ", sigma.respects_relations(), || format!("{sigma}"));
    rep.extend(verify_modular(arr, s.depth));
    rep.extend(verify_cy_chain_iso(arr));
    from_result(&mut rep, "σ = exp(Σ∂_α)", "σ", sigma_against_partials(arr), |(_, plus)| {
        (!plus.is_empty()).then(|| format!("differs on {plus:?}"))
    });
    rep
}
