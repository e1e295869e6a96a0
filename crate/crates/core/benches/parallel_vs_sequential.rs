use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dgreedy::bounds::{adversarial_search, SearchMode};
use dgreedy::design::efficiency_curve;
use dgreedy::graph::InfoGraph;
use dgreedy::greedy::brute_force_opt;
use dgreedy::sample::{random_coverage_instance, random_graph};
use dgreedy::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn optimum(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_opt");
    for n in [6, 8] {
        let inst = random_coverage_instance(n, 12, 7, 0).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| brute_force_opt(black_box(inst), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("adversarial_search");
    group.sample_size(10);
    let cycle = InfoGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let graphs = [("five_cycle", cycle), ("random_6", random_graph(6, 7, 1))];
    for (label, g) in &graphs {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, label), g, |b, g| {
                b.iter(|| adversarial_search(black_box(g), SearchMode::Sampled { budget: 100 }, 7, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn curve(c: &mut Criterion) {
    let mut group = c.benchmark_group("efficiency_curve");
    for n in [10, 16] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| efficiency_curve(black_box(n), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, optimum, search, curve);
criterion_main!(benches);
