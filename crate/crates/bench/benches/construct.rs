use betadyn::levelset::{construct_point, make_schedule};
use betadyn::numerics::rat;
use betadyn::paramspace::{construct_param_point, param_cylinder, ParamTargets};
use betadyn::BetaSpec;
use betadyn_bench::tribonacci;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bench_level_set(c: &mut Criterion) {
    let beta = tribonacci();
    let mut g = c.benchmark_group("construct_point");
    for depth in [5usize, 7] {
        let s = make_schedule(&rat(1, 5), &rat(1, 2), 2, depth).unwrap();
        g.bench_with_input(BenchmarkId::new("tribonacci", depth), &s, |b, s| {
            b.iter(|| construct_point(s, &beta, black_box(3)).unwrap())
        });
    }
    g.finish();
}

fn bench_param(c: &mut Criterion) {
    let b1 = BetaSpec::rational(rat(17, 10)).unwrap();
    let b2 = BetaSpec::rational(rat(19, 10)).unwrap();
    let t = ParamTargets { a: rat(1, 5), b: rat(1, 2), big_n: None, depth: 4 };
    c.bench_function("construct_param_point/4", |b| {
        b.iter(|| construct_param_point(&t, &b1, &b2, black_box(3)).unwrap())
    });
    c.bench_function("param_cylinder/1,0,1,0,0,1", |b| {
        b.iter(|| param_cylinder(black_box(&[1, 0, 1, 0, 0, 1]), 128).unwrap())
    });
}

criterion_group!(benches, bench_level_set, bench_param);
criterion_main!(benches);
