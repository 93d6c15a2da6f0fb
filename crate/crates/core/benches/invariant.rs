use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use wu_core::generators::random_immersion;
use wu_core::wu::wu_with;
use wu_core::{validate_generic, Graph, WuOptions};

fn invariant(c: &mut Criterion) {
    let mut group = c.benchmark_group("wu");
    for n in [4, 5, 6] {
        let f = random_immersion(&Graph::complete(n).unwrap(), 7, 2).unwrap();
        for parallel in [false, true] {
            let name = if parallel { "parallel" } else { "sequential" };
            let opts = WuOptions {
                parallel,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, format!("K{n}")), &f, |b, f| {
                b.iter(|| wu_with(f, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for n in [4, 6] {
        let f = random_immersion(&Graph::complete(n).unwrap(), 7, 2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("K{n}")), &f, |b, f| {
            b.iter(|| validate_generic(f, 1e-6))
        });
    }
    group.finish();
}

criterion_group!(benches, invariant, validation);
criterion_main!(benches);
