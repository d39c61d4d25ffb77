use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hilbaut_bench::{instances, GENERALIZED, PELL_RADICANDS};
use hilbaut_core::aut::{classify_with, Mode};
use hilbaut_core::pell::{fundamental_solutions, pell_minimal};
use hilbaut_core::report::table;
use num_bigint::BigInt;

fn pell(c: &mut Criterion) {
    let mut g = c.benchmark_group("pell_minimal");
    for &d in PELL_RADICANDS {
        let d = BigInt::from(d);
        g.bench_with_input(BenchmarkId::from_parameter(&d), &d, |b, d| {
            b.iter(|| pell_minimal(black_box(d)).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("fundamental_solutions");
    for &(d, m) in GENERALIZED {
        let (d, m) = (BigInt::from(d), BigInt::from(m));
        g.bench_with_input(BenchmarkId::new(d.to_string(), &m), &(d, m), |b, (d, m)| {
            b.iter(|| fundamental_solutions(black_box(d), black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    for p in instances() {
        for (label, mode) in [("fast", Mode::Fast), ("verify", Mode::Verify)] {
            g.bench_with_input(BenchmarkId::new(label, &p), &p, |b, p| {
                b.iter(|| classify_with(black_box(p), mode).unwrap())
            });
        }
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    g.bench_function("n=2..10,t<=120", |b| b.iter(|| table(2, 10, 120, Some(1)).unwrap()));
    g.bench_function("n=2..10,t<=120,parallel", |b| b.iter(|| table(2, 10, 120, None).unwrap()));
    g.finish();
}

criterion_group!(benches, pell, classify, tables);
criterion_main!(benches);
