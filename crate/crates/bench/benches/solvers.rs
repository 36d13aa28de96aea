//! Wall-clock benchmarks for the two solvers and the revenue oracle.
//!
//! Objectives are built once per size outside the timed loop, so the timed
//! body is exactly one solver run or one oracle evaluation. Solvers are fed
//! the raw objective, not a memo wrapper; cache hits would understate query
//! cost.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use drsub::objectives::{
    build_revenue_instance, ExponentModel, SyntheticConcaveQuadratic, WeightModel,
};
use drsub::{
    balanced_alpha, fast_dr_sub, fast_dr_sub_plus, Element, LatticeVector, ProblemInstance,
    ValueOracle,
};

fn ring_with_chords(n: u32) -> Vec<(u32, u32)> {
    let mut edges = Vec::with_capacity(2 * n as usize);
    for u in 0..n {
        edges.push((u, (u + 1) % n));
        edges.push((u, (u + 7) % n));
    }
    edges
}

fn solver_benchmarks(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    group.sample_size(20);
    for &n in &[100usize, 400] {
        let k = (n / 10) as u64;
        let instance = ProblemInstance::uniform(n, k).unwrap();
        let objective = SyntheticConcaveQuadratic::random(&instance, 40, 7);
        group.bench_with_input(BenchmarkId::new("fastdrsub", n), &n, |b, _| {
            b.iter(|| {
                fast_dr_sub(black_box(&objective), &instance, balanced_alpha())
                    .unwrap()
                    .best
                    .value
            })
        });
        group.bench_with_input(BenchmarkId::new("fastdrsubplus", n), &n, |b, _| {
            b.iter(|| {
                fast_dr_sub_plus(black_box(&objective), &instance, balanced_alpha(), 0.1)
                    .unwrap()
                    .best
                    .value
            })
        });
    }
    group.finish();
}

fn oracle_benchmarks(c: &mut Criterion) {
    let mut group = c.benchmark_group("revenue_oracle");
    let n = 2000usize;
    let edges = ring_with_chords(n as u32);
    let revenue =
        build_revenue_instance(n, &edges, WeightModel::Uniform01, ExponentModel::Uniform01, 11)
            .unwrap();
    let mut x = LatticeVector::zero();
    let mut e = 0;
    while e < n {
        x.add_units_mut(Element(e), 1 + (e / 40) as u64 % 3);
        e += 37;
    }
    group.bench_function("evaluate_n2000", |b| {
        b.iter(|| black_box(revenue.evaluate(black_box(&x))))
    });
    group.finish();
}

criterion_group!(benches, solver_benchmarks, oracle_benchmarks);
criterion_main!(benches);
