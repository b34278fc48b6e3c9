use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dlbisim_bench::{bounded, bounded_graph, small_instances};
use dlbisim_core::bisim::{largest_auto_bisimulation, naive_largest_bisimulation};
use dlbisim_core::graph::LabeledGraph;
use dlbisim_core::refine::{compute_partition, compute_partition_untraced};
use dlbisim_core::FeatureSet;

fn refinement(c: &mut Criterion) {
    let mut group = c.benchmark_group("refine");
    group.sample_size(10);
    for phi in ["", "Q", "IQ", "IOQUS"] {
        let features: FeatureSet = phi.parse().unwrap();
        for n in [10_000, 40_000] {
            let g = bounded_graph(n, 3, 7);
            group.throughput(Throughput::Elements(n as u64));
            group.bench_with_input(BenchmarkId::new(format!("phi={phi}"), n), &g, |b, g| {
                b.iter(|| compute_partition_untraced(features, black_box(g)))
            });
        }
    }
    group.finish();
}

fn traced(c: &mut Criterion) {
    let g = bounded_graph(20_000, 3, 7);
    let q: FeatureSet = "Q".parse().unwrap();
    c.bench_function("refine/traced/20000", |b| {
        b.iter(|| compute_partition(q, black_box(&g)))
    });
}

fn graph_build(c: &mut Criterion) {
    let i = bounded(40_000, 3, 7);
    c.bench_function("graph/from_interpretation/40000", |b| {
        b.iter(|| LabeledGraph::from_interpretation(black_box(&i)))
    });
}

fn against_naive(c: &mut Criterion) {
    let instances = small_instances(50, 12, 3);
    let phi: FeatureSet = "IQ".parse().unwrap();
    let mut group = c.benchmark_group("small");
    group.bench_function("refine", |b| {
        b.iter(|| {
            instances
                .iter()
                .map(|i| largest_auto_bisimulation(phi, i).num_blocks())
                .sum::<usize>()
        })
    });
    group.bench_function("naive", |b| {
        b.iter(|| {
            instances
                .iter()
                .map(|i| {
                    naive_largest_bisimulation(phi, i, i)
                        .unwrap()
                        .map_or(0, |z| z.len())
                })
                .sum::<usize>()
        })
    });
    group.finish();
}

criterion_group!(benches, refinement, traced, graph_build, against_naive);
criterion_main!(benches);
