use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hcara::experiment::{run_trial, ExperimentConfig};
use hcara::strong::minimal_strong_witness_indices;
use hcara::{caratheodory_number, strong_hull_contains};
use hcara_bench::{normal_sets, strong_membership_case};

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("caratheodory_number");
    for (name, h) in normal_sets() {
        group.bench_function(name, |b| {
            b.iter(|| caratheodory_number(black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn strong(c: &mut Criterion) {
    let (k, x, p) = strong_membership_case();
    c.bench_function("strong_hull_contains/cube3", |b| {
        b.iter(|| strong_hull_contains(black_box(&k), black_box(&x), black_box(&p)).unwrap())
    });
    c.bench_function("minimal_strong_witness/cube3", |b| {
        b.iter(|| {
            minimal_strong_witness_indices(black_box(&k), black_box(&x), black_box(&p)).unwrap()
        })
    });
}

fn trials(c: &mut Criterion) {
    let cfg = ExperimentConfig::default();
    let mut group = c.benchmark_group("experiment");
    group.sample_size(10);
    group.bench_function("trial/dim2", |b| {
        b.iter(|| run_trial(black_box(&cfg), 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, invariants, strong, trials);
criterion_main!(benches);
