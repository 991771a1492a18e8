use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use schwarzian_lab::{
    brute_force_pointwise_max, closed_form_s_f0, estimate_norm, schwarzian_series, ClassParams,
    ClosedForm, ExtremalSpec, GridSpec, SeriesFunction, SweepSpec, WeightPower,
};

fn norms(c: &mut Criterion) {
    let p = ClassParams::new(0.3, 0.4).unwrap();
    let mut g = c.benchmark_group("norm");
    g.sample_size(10);

    let closed = ClosedForm::new(move |z| Ok(closed_form_s_f0(z, &p)));
    let grid = GridSpec::norm_default(0.999);
    g.bench_function("closed_form_s_f0", |b| {
        b.iter(|| estimate_norm(&closed, WeightPower::Two, black_box(&grid)).unwrap())
    });

    let f = ExtremalSpec::half_plane(p).extremal_series(512).unwrap();
    let s = SeriesFunction::new(schwarzian_series(&f).unwrap());
    let grid = GridSpec::new(128, 65, 0.95, 12);
    g.bench_function("series_s_512", |b| {
        b.iter(|| estimate_norm(&s, WeightPower::Two, black_box(&grid)).unwrap())
    });
    g.finish();
}

fn brute_force(c: &mut Criterion) {
    let p = ClassParams::new(0.3, 0.4).unwrap();
    let mut g = c.benchmark_group("brute_force");
    g.sample_size(10);
    for n in [32, 64] {
        let sweep = SweepSpec::cube(n);
        g.bench_function(format!("cube_{n}"), |b| {
            b.iter(|| brute_force_pointwise_max(black_box(0.8), &p, &sweep).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, norms, brute_force);
criterion_main!(benches);
