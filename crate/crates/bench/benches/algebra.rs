use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use logdiff::gerstenhaber::bracket;
use logdiff::hochschild::{omega2, partial_derivation};
use logdiff::window::cohomology_dims;
use logdiff::{Arrangement, Mono, OreElement, Rational, TruncationWindow};

fn multiplication(c: &mut Criterion) {
    let mut g = c.benchmark_group("mul");
    for r in [3, 5] {
        let a = Arrangement::example(r).unwrap();
        let u = OreElement::mono(&a, Mono::new(1, 2, 3, 2), Rational::from(1));
        let v = OreElement::mono(&a, Mono::new(2, 3, 2, 3), Rational::new(3, 2));
        g.bench_with_input(BenchmarkId::from_parameter(r), &(u, v), |b, (u, v)| b.iter(|| black_box(u) * black_box(v)));
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology_dims");
    g.sample_size(10);
    let a = Arrangement::example(3).unwrap();
    for n in [4, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| cohomology_dims(&a, &TruncationWindow::new(n)).unwrap())
        });
    }
    g.finish();
}

fn brackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket");
    g.sample_size(20);
    let a = Arrangement::example(3).unwrap();
    let w = omega2(&a);
    let d0 = partial_derivation(&a, 0).unwrap().0;
    let d2 = partial_derivation(&a, 2).unwrap().0;
    g.bench_function("derivations", |b| b.iter(|| bracket(&d0, &d2).unwrap()));
    g.bench_function("derivation_omega2", |b| b.iter(|| bracket(&d2, &w).unwrap()));
    g.bench_function("omega2_omega2", |b| b.iter(|| bracket(&w, &w).unwrap()));
    g.finish();
}

criterion_group!(benches, multiplication, cohomology, brackets);
criterion_main!(benches);
