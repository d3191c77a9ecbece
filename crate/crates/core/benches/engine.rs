use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use floer_core::corpus::{generate_corpus, run_self_tests};
use floer_core::gradedalg::{enumerate_derivations, GradedRing};
use floer_core::maslov::{maslov_index, LagrangianLoop};
use floer_core::par;
use floer_core::spectral::SpectralOptions;
use floer_core::theorems::audin_grid;

fn workers() -> Vec<(&'static str, usize)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    if par::is_parallel() {
        vec![("one_worker", 1), ("all_workers", all)]
    } else {
        vec![("sequential", 1)]
    }
}

fn corpus(c: &mut Criterion) {
    let entries = generate_corpus(42, 40).unwrap();
    let opts = SpectralOptions::default();
    let mut g = c.benchmark_group("corpus_self_test");
    g.sample_size(10);
    for (label, threads) in workers() {
        g.bench_with_input(BenchmarkId::new(label, threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(run_self_tests(42, &entries, &opts))))
        });
    }
    g.finish();
}

fn derivations(c: &mut Criterion) {
    let ring = Arc::new(GradedRing::exterior(4).unwrap());
    let mut g = c.benchmark_group("enumerate_derivations_exterior4");
    for (label, threads) in workers() {
        g.bench_with_input(BenchmarkId::new(label, threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(enumerate_derivations(&ring, -1).unwrap())))
        });
    }
    g.finish();
}

fn audin(c: &mut Criterion) {
    let mut g = c.benchmark_group("audin_grid");
    g.sample_size(10);
    for (label, threads) in workers() {
        g.bench_with_input(BenchmarkId::new(label, threads), &threads, |b, &t| {
            b.iter(|| {
                par::with_threads(t, || {
                    black_box(audin_grid(&[2, 3, 4, 5, 6], |n| (2..=2 * n).collect(), true).unwrap())
                })
            })
        });
    }
    g.finish();
}

fn maslov(c: &mut Criterion) {
    let lp = LagrangianLoop::rotating(&[1, 2, -1, 0, 1, 0], 4096).unwrap();
    let mut g = c.benchmark_group("maslov_index_4096");
    for (label, threads) in workers() {
        g.bench_with_input(BenchmarkId::new(label, threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || black_box(maslov_index(&lp).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, corpus, derivations, audin, maslov);
criterion_main!(benches);
