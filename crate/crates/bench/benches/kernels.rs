use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qadder::channels::{adder_channel, apply_channel};
use qadder::info::holevo;
use qadder::linalg::{hermitian_eigensystem, von_neumann_entropy};
use qadder::{quantum_rate_sum, tau_state};
use qadder_bench::{mixed_state, pauli_ensemble};

fn bench_eigensystem(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigensystem");
    for dim in [4usize, 16, 64] {
        let rho = mixed_state(dim);
        group.bench_function(format!("dim_{dim}"), |b| {
            b.iter(|| hermitian_eigensystem(black_box(rho.matrix())).unwrap())
        });
    }
    group.finish();
}

fn bench_adder_channel(c: &mut Criterion) {
    let alpha = adder_channel(3).unwrap();
    let rho = mixed_state(8);
    c.bench_function("adder_channel_l3_apply", |b| {
        b.iter(|| apply_channel(black_box(&alpha), black_box(&rho)).unwrap())
    });
}

fn bench_holevo(c: &mut Criterion) {
    let ensemble = pauli_ensemble().joint();
    c.bench_function("holevo_pauli_16_signals", |b| {
        b.iter(|| holevo(black_box(&ensemble)).unwrap())
    });
}

fn bench_rate_sum(c: &mut Criterion) {
    c.bench_function("quantum_rate_sum_log_space_4096", |b| {
        b.iter(|| quantum_rate_sum(black_box(4096)))
    });
    c.bench_function("tau_entropy_l3", |b| {
        b.iter(|| von_neumann_entropy(&tau_state(black_box(3)).unwrap()).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eigensystem,
    bench_adder_channel,
    bench_holevo,
    bench_rate_sum
);
criterion_main!(benches);
