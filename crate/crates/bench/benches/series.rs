use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schwarzian_lab::{schwarzian_series, ClassParams, Complex64, ComplexSeries, ExtremalSpec};

fn sample(order: usize) -> ComplexSeries {
    ComplexSeries::from_fn(order, |k| {
        let k = k as f64;
        Complex64::new((0.7 * k).cos(), (1.3 * k).sin()) / (1.0 + k)
    })
}

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [64, 256, 1024] {
        let a = sample(order);
        let b = sample(order).scale(Complex64::new(0.5, 0.25));
        let one_plus = &ComplexSeries::one(order) + &b;
        g.bench_with_input(BenchmarkId::new("mul", order), &order, |bch, _| {
            bch.iter(|| black_box(&a).mul(black_box(&b)))
        });
        g.bench_with_input(BenchmarkId::new("div", order), &order, |bch, _| {
            bch.iter(|| black_box(&a).div(black_box(&one_plus)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("exp", order), &order, |bch, _| {
            bch.iter(|| black_box(&b).exp())
        });
    }
    g.finish();
}

fn extremals(c: &mut Criterion) {
    let p = ClassParams::new(0.4, 0.2).unwrap();
    let spec = ExtremalSpec::blaschke(0.7, p).unwrap();
    let mut g = c.benchmark_group("extremal");
    for order in [128, 512] {
        g.bench_with_input(BenchmarkId::new("series", order), &order, |bch, &n| {
            bch.iter(|| spec.extremal_series(black_box(n)).unwrap())
        });
        let f = spec.extremal_series(order).unwrap();
        g.bench_with_input(BenchmarkId::new("schwarzian", order), &order, |bch, _| {
            bch.iter(|| schwarzian_series(black_box(&f)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, arithmetic, extremals);
criterion_main!(benches);
