use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hopfmu_core::fibers::extract_fiber;
use hopfmu_core::generators::{gen_hopf, gen_zeta};
use hopfmu_core::hopf::hopf_invariant;
use hopfmu_core::io::check_theorem;

fn generators(c: &mut Criterion) {
    c.bench_function("gen_hopf", |b| b.iter(|| gen_hopf().unwrap()));
    let mut g = c.benchmark_group("gen_zeta");
    g.sample_size(10);
    for n in [2u32, 3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| gen_zeta(n).unwrap()));
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let hopf = gen_hopf().unwrap().map;
    let abc = hopf.target().faces(2)[0].clone();
    c.bench_function("hopf_invariant/hopf", |b| b.iter(|| hopf_invariant(black_box(&hopf)).unwrap()));
    c.bench_function("extract_fiber/hopf", |b| b.iter(|| extract_fiber(black_box(&hopf), &abc).unwrap()));

    let mut g = c.benchmark_group("check_theorem/zeta");
    g.sample_size(10);
    for n in [2u32, 3, 4] {
        let f = gen_zeta(n).unwrap().map;
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| check_theorem(f, 20, 0).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, generators, invariants);
criterion_main!(benches);
