use betadyn::admissibility::{count, enumerate, is_admissible};
use betadyn::levelset::{construct_prefix, make_schedule};
use betadyn::numerics::rat;
use betadyn_bench::{bases, tribonacci};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use std::hint::black_box;

fn bench_count(c: &mut Criterion) {
    let mut g = c.benchmark_group("count");
    for (name, beta) in bases() {
        g.bench_with_input(BenchmarkId::new(name, 1000), &1000usize, |b, &n| {
            b.iter(|| -> BigUint { count(&beta, black_box(n)).unwrap() })
        });
    }
    g.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let beta = tribonacci();
    c.bench_function("enumerate/tribonacci/14", |b| b.iter(|| enumerate(&beta, black_box(14)).unwrap()));
}

fn bench_is_admissible(c: &mut Criterion) {
    let beta = tribonacci();
    let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, 6).unwrap();
    let word = construct_prefix(&s, &beta, 1, 20_000).unwrap();
    c.bench_function("is_admissible/tribonacci/20000", |b| b.iter(|| is_admissible(black_box(&word), &beta).unwrap()));
}

criterion_group!(benches, bench_count, bench_enumerate, bench_is_admissible);
criterion_main!(benches);
