use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gradcan::deciders::analyze_graph;
use gradcan::gmatrix::graded_exchange_witness;
use gradcan::graph::enumerate_cycles;
use gradcan::oracle::{enumerate_homogeneous, sweep_graded_clean, sweep_graded_exchange, SearchWindow};
use gradcan::{Base, Field, GradedMatrixRing, LpaElement};
use gradcan_bench::{chorded_cycle, complete, dense_element, walk_word};

fn lpa(c: &mut Criterion) {
    let mut group = c.benchmark_group("lpa");
    for n in [2, 3, 4] {
        let g = Arc::new(complete(n));
        let a = dense_element(&g, Field::Rational);
        group.bench_with_input(BenchmarkId::new("mul_dense", n), &a, |b, a| {
            b.iter(|| black_box(a.mul(a).unwrap()))
        });
    }
    let g = Arc::new(chorded_cycle(5));
    for len in [4, 8, 16] {
        let word = walk_word(&g, len);
        group.bench_with_input(BenchmarkId::new("normalize_word", len), &word, |b, w| {
            b.iter(|| black_box(LpaElement::from_word(&g, Field::Rational.one(), w).unwrap()))
        });
    }
    group.finish();
}

fn graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph");
    for n in [4, 6, 8] {
        let g = chorded_cycle(n);
        group.bench_with_input(BenchmarkId::new("enumerate_cycles", n), &g, |b, g| {
            b.iter(|| black_box(enumerate_cycles(g)))
        });
        group.bench_with_input(BenchmarkId::new("analyze", n), &g, |b, g| {
            b.iter(|| black_box(analyze_graph(g).unwrap()))
        });
    }
    group.finish();
}

fn matrices(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix");
    group.sample_size(20);
    let cases = [
        ("F2[x^2] (0,1)", Base::Laurent { m: 2 }, vec![0, 1], 2),
        ("F3 (0,1,1)", Base::Field, vec![0, 1, 1], 3),
    ];
    for (name, base, shifts, p) in cases {
        let ring = GradedMatrixRing::new(base, shifts).unwrap();
        let w = SearchWindow::new(p, -2, 2).unwrap();
        let xs: Vec<_> = w.degrees().flat_map(|d| enumerate_homogeneous(&ring, d, &w)).collect();
        group.bench_with_input(BenchmarkId::new("exchange_witnesses", name), &xs, |b, xs| {
            b.iter(|| {
                for x in xs {
                    black_box(graded_exchange_witness(x).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("oracle_exchange_sweep", name), &ring, |b, r| {
            b.iter(|| black_box(sweep_graded_exchange(r, &w).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("oracle_clean_sweep", name), &ring, |b, r| {
            b.iter(|| black_box(sweep_graded_clean(r, &w).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, lpa, graphs, matrices);
criterion_main!(benches);
