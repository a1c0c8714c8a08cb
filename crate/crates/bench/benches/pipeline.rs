use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use bilattice_bench::{h_pair, q_pair};
use bilattice_core::sigma::{SigmaPoly, SigmaScalar};
use bilattice_core::{classify, hankel_oracle};

fn bench_operators(c: &mut Criterion) {
    let pair = h_pair();
    let f = SigmaPoly::z_pow(16, pair.context().clone());
    c.bench_function("difference_z16", |b| {
        b.iter(|| black_box(&f).difference())
    });
    c.bench_function("leibniz_row_6", |b| {
        let g = pair.phi_sigma();
        b.iter(|| black_box(&g).leibniz_row(6))
    });
}

fn bench_moments(c: &mut Criterion) {
    let pair = q_pair();
    c.bench_function("pearson_moments_24", |b| {
        b.iter(|| pair.pearson_moments(SigmaScalar::one(), black_box(24)).unwrap())
    });
    let u = pair.pearson_moments(SigmaScalar::one(), 18).unwrap();
    c.bench_function("hankel_oracle_8", |b| {
        b.iter(|| hankel_oracle(black_box(&u), 8).unwrap())
    });
}

fn bench_classical(c: &mut Criterion) {
    let pair = q_pair();
    c.bench_function("recurrence_coeffs_40", |b| {
        b.iter(|| pair.recurrence_coeffs(black_box(40)).unwrap())
    });
    c.bench_function("rodrigues_8", |b| {
        b.iter(|| pair.rodrigues(black_box(8)).unwrap())
    });
    c.bench_function("classify_q", |b| {
        b.iter(|| classify(black_box(&pair)).unwrap())
    });
}

criterion_group!(benches, bench_operators, bench_moments, bench_classical);
criterion_main!(benches);
