use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gpa_core::algebra::{bruteforce_is_prime, bruteforce_is_semiprime, Caps};
use gpa_core::graph::acyclic_graph_groupoid;
use gpa_core::{DirectedGraph, ExecMode, FiniteGroup, FiniteGroupoid, RingSpec};

fn modes() -> [(&'static str, ExecMode); 2] {
    [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)]
}

fn prime_full_scan(c: &mut Criterion) {
    // a path on three vertices: 9 arrows, prime, so every pair is visited
    let path = DirectedGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let g = acyclic_graph_groupoid(&path).unwrap().groupoid;
    let ring = RingSpec::IntegersMod(2);
    let mut group = c.benchmark_group("bruteforce_prime");
    group.sample_size(10);
    for (name, mode) in modes() {
        let caps = Caps { mode, ..Caps::default() };
        group.bench_with_input(BenchmarkId::new(name, g.arrow_count()), &g, |b, g| {
            b.iter(|| black_box(bruteforce_is_prime(g, &ring, &caps).unwrap()))
        });
    }
    group.finish();
}

fn semiprime_full_scan(c: &mut Criterion) {
    // Z/3[C8] is semiprime, so every candidate is tried
    let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(8));
    let ring = RingSpec::IntegersMod(3);
    let mut group = c.benchmark_group("bruteforce_semiprime");
    group.sample_size(10);
    for (name, mode) in modes() {
        let caps = Caps { mode, ..Caps::default() };
        group.bench_with_input(BenchmarkId::new(name, g.arrow_count()), &g, |b, g| {
            b.iter(|| black_box(bruteforce_is_semiprime(g, &ring, &caps).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, prime_full_scan, semiprime_full_scan);
criterion_main!(benches);
