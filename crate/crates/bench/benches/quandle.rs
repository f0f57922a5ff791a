use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quandle_core::{canon, enumerate, tables};

fn canonical_forms(c: &mut Criterion) {
    let q72 = tables::q72();
    let q61 = tables::q61();
    c.bench_function("canonical_form q72", |b| {
        b.iter(|| canon::canonical_form(black_box(&q72)).unwrap())
    });
    c.bench_function("canonical_form q61", |b| {
        b.iter(|| canon::canonical_form(black_box(&q61)).unwrap())
    });
}

fn automorphisms(c: &mut Criterion) {
    let q72 = tables::q72();
    c.bench_function("automorphism_group q72", |b| {
        b.iter(|| canon::automorphism_group(black_box(&q72)).unwrap())
    });
    c.bench_function("brute_force_automorphisms q72", |b| {
        b.iter(|| canon::brute_force_automorphisms(black_box(&q72)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_connected");
    group.sample_size(10);
    for n in [6, 7, 8] {
        group.bench_function(n.to_string(), |b| {
            b.iter(|| enumerate::enumerate_connected(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, canonical_forms, automorphisms, enumeration);
criterion_main!(benches);
