use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use spectrum_auctions::{generate_topology, TopologySpec};

fn bench_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_topology");
    for size in [30usize, 150, 300] {
        let spec = TopologySpec::uniform(TopologySpec::split_evenly(size, 3), 2, 7);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| generate_topology(black_box(&spec)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generation);
criterion_main!(benches);
