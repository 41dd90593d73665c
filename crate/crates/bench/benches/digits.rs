use betadyn::digits;
use betadyn::runlength::random_seed_point;
use betadyn_bench::bases;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use std::hint::black_box;

fn bench_digits(c: &mut Criterion) {
    let x: BigRational = random_seed_point(11, 0);
    let mut g = c.benchmark_group("digits");
    for (name, beta) in bases() {
        for n in [256usize, 2048] {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| digits(black_box(&x), &beta, n).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_expansion_of_one(c: &mut Criterion) {
    let mut g = c.benchmark_group("expansion_of_one");
    for (name, beta) in bases() {
        g.bench_function(name, |b| {
            b.iter(|| {
                let fresh = beta.with_precision(beta.precision());
                fresh.expansion_of_one().eps_star(black_box(512)).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_digits, bench_expansion_of_one);
criterion_main!(benches);
