use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gentle_core::suite::{angulation_list_suite, blocks_suite, calculus_suite, parity_suite};
use gentle_core::surface::enumerate_disk_angulations;
use gentle_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    let angs = enumerate_disk_angulations(4, 2).unwrap();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("blocks-100", name), &exec, |b, &e| b.iter(|| blocks_suite(100, 0, e)));
        g.bench_with_input(BenchmarkId::new("calculus-50", name), &exec, |b, &e| b.iter(|| calculus_suite(50, 0, e)));
        g.bench_with_input(BenchmarkId::new("parity-20", name), &exec, |b, &e| b.iter(|| parity_suite(20, 0, e)));
        g.bench_with_input(BenchmarkId::new("disk-4-2", name), &exec, |b, &e| {
            b.iter(|| angulation_list_suite("disk", angs.clone(), e))
        });
    }
    g.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
