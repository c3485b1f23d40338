use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hohlov_bench::{normalized_series, triple, unit_series};
use hohlov_core::operator::{apply, apply_inverse};
use hohlov_core::verifier::membership_test;

fn series_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for order in [64, 512, 4096] {
        let s = unit_series(order);
        group.bench_with_input(BenchmarkId::new("cauchy_mul", order), &s, |b, s| b.iter(|| s.cauchy_mul(black_box(s))));
        group.bench_with_input(BenchmarkId::new("principal_sqrt", order), &s, |b, s| {
            b.iter(|| black_box(s).principal_sqrt())
        });
        group.bench_with_input(BenchmarkId::new("reciprocal", order), &s, |b, s| b.iter(|| black_box(s).reciprocal()));
    }
    group.finish();
}

fn operator(c: &mut Criterion) {
    let p = triple();
    let f = normalized_series(4096);
    c.bench_function("apply 4096", |b| b.iter(|| apply(&p, black_box(&f))));
    c.bench_function("apply_inverse 4096", |b| b.iter(|| apply_inverse(&p, black_box(&f))));
    let member = apply_inverse(&p, &unit_series(4095).principal_sqrt().unwrap().shift_up()).unwrap();
    c.bench_function("membership 4096x4096", |b| b.iter(|| membership_test(&p, black_box(&member), 0.999, 4096)));
}

criterion_group!(benches, series_ops, operator);
criterion_main!(benches);
