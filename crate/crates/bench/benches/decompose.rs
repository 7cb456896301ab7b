use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jordan_tensor::{build_generators, decompose, rank_profile_lambda, verify_all};
use jordan_tensor_bench::{params, CASES};

fn determinant_route(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for &case in CASES {
        let p = params(case);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{case:?}")), &p, |b, p| {
            b.iter(|| decompose(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_generators");
    group.sample_size(10);
    for &case in CASES {
        let p = params(case);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{case:?}")), &p, |b, p| {
            b.iter(|| build_generators(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    for &case in &CASES[..2] {
        let p = params(case);
        let dec = decompose(&p).unwrap();
        let gens = build_generators(&p).unwrap();
        group.bench_with_input(BenchmarkId::new("rank_profile", format!("{case:?}")), &p, |b, p| {
            b.iter(|| rank_profile_lambda(black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("verify_all", format!("{case:?}")), &p, |b, p| {
            b.iter(|| verify_all(black_box(p), &dec, &gens))
        });
    }
    group.finish();
}

criterion_group!(benches, determinant_route, generators, oracles);
criterion_main!(benches);
