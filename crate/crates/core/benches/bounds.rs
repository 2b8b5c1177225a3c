use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tjoin_core::ear::{ear_upper_bound_with, Strategy};
use tjoin_core::generators;
use tjoin_core::greedy::tjoin_bounds_with;
use tjoin_core::one_two::mu_12_with;
use tjoin_core::oracle::brute_force_max_valid_set_with;
use tjoin_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn greedy_bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("tjoin_bounds");
    for n in [40, 120] {
        let d = generators::random_metric(n, 1).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &d, |b, d| {
                b.iter(|| tjoin_bounds_with(black_box(d), 0, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn ear_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("ear_upper_bound_best");
    for n in [30, 80] {
        let g = generators::random_two_edge_connected(n, n, false, 3).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| ear_upper_bound_with(black_box(g), Strategy::Best, Some(0.05), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn one_two_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("mu_12");
    for n in [41, 121] {
        let inst = generators::one_two(n, 0.3, 5).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| mu_12_with(black_box(inst), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn valid_set_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_max_valid_set");
    group.sample_size(10);
    let g = generators::random_connected(8, 14, 9).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 14), &g, |b, g| {
            b.iter(|| brute_force_max_valid_set_with(black_box(g), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, greedy_bounds, ear_bound, one_two_exact, valid_set_oracle);
criterion_main!(benches);
