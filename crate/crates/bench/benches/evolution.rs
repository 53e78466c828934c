use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kemmer::algebra::{build_beta_set, verify_all_dkp};
use kemmer::dynamics::{evolve_two_component, kg_oracle_evolve, truncated_evolve};
use kemmer::fields::{density, kg_initial_data, total_charge};
use kemmer_bench::{packet_1d, packet_2d};

fn bench_algebra(c: &mut Criterion) {
    let b = build_beta_set();
    c.bench_function("verify_all_dkp", |bench| bench.iter(|| verify_all_dkp(black_box(&b))));
}

fn bench_evolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve_two_component");
    for n in [256, 1024, 4096] {
        let state = packet_1d(n);
        group.bench_with_input(BenchmarkId::new("1d", n), &state, |b, s| {
            b.iter(|| evolve_two_component(s, black_box(10.0)).unwrap())
        });
    }
    let state = packet_2d(128);
    group.bench_with_input(BenchmarkId::new("2d", 128), &state, |b, s| {
        b.iter(|| evolve_two_component(s, black_box(10.0)).unwrap())
    });
    group.finish();
}

fn bench_models(c: &mut Criterion) {
    let state = packet_1d(1024);
    let (psi5, rate) = kg_initial_data(&state);
    c.bench_function("kg_oracle_evolve 1024", |b| {
        b.iter(|| kg_oracle_evolve(&psi5, &rate, 1.0, black_box(10.0)).unwrap())
    });
    c.bench_function("truncated_evolve order 3, 1024", |b| {
        b.iter(|| truncated_evolve(state.psi_plus(), 1.0, black_box(10.0), 3).unwrap())
    });
}

fn bench_observables(c: &mut Criterion) {
    let state = packet_1d(4096);
    c.bench_function("density 4096", |b| b.iter(|| density(black_box(&state))));
    c.bench_function("total_charge 4096", |b| b.iter(|| total_charge(black_box(&state))));
    c.bench_function("packet_1d 1024", |b| b.iter(|| packet_1d(black_box(1024))));
}

criterion_group!(benches, bench_algebra, bench_evolve, bench_models, bench_observables);
criterion_main!(benches);
