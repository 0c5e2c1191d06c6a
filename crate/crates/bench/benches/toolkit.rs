use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use splitter_bench::{beamsplitter, planted, unitary};
use splitter_core::classify::verdict_cross_check;
use splitter_core::fock::{lift, permanent};
use splitter_core::forensics::{
    finite_closure, generator_triple, lie_closure_dimension, DEDUP_GRANULARITY, DEFAULT_CAP,
};
use splitter_core::reck::decompose;
use splitter_core::synth::synthesize;
use splitter_core::Tolerance;

fn bench_permanent(c: &mut Criterion) {
    let mut g = c.benchmark_group("permanent");
    for n in [6, 9, 12] {
        let m = unitary(n, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| permanent(black_box(m)).unwrap()));
    }
    g.finish();
}

fn bench_lift(c: &mut Criterion) {
    let u = unitary(4, 40);
    c.bench_function("lift m=4 n=3", |b| b.iter(|| lift(black_box(&u), 3).unwrap()));
}

fn bench_decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    for m in [4, 8] {
        let u = unitary(m, 100 + m as u64);
        g.bench_with_input(BenchmarkId::from_parameter(m), &u, |b, u| {
            b.iter(|| decompose(black_box(u), Tolerance::default()).unwrap())
        });
    }
    g.finish();
}

fn bench_forensics(c: &mut Criterion) {
    let gens = generator_triple(&beamsplitter(7)).to_vec();
    let dedup = Tolerance::new(DEDUP_GRANULARITY).unwrap();
    c.bench_function("closure cap 3240", |b| b.iter(|| finite_closure(black_box(&gens), DEFAULT_CAP, dedup).unwrap()));
    let rank = Tolerance::new(1e-6).unwrap();
    c.bench_function("lie closure", |b| b.iter(|| lie_closure_dimension(black_box(&gens), rank).unwrap()));
    let bs = beamsplitter(8);
    c.bench_function("verdict cross-check", |b| b.iter(|| verdict_cross_check(black_box(&bs)).unwrap()));
}

fn bench_synth(c: &mut Criterion) {
    let mut g = c.benchmark_group("synthesize planted");
    g.sample_size(10);
    for len in [4, 6, 8] {
        let (bs, target) = planted(len, 9);
        g.bench_with_input(BenchmarkId::from_parameter(len), &target, |b, t| {
            b.iter(|| synthesize(&bs, black_box(t), 1e-9, len).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_permanent, bench_lift, bench_decompose, bench_forensics, bench_synth);
criterion_main!(benches);
