// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qec_core::codes::builtin;
use qec_core::gadgets::{cat_syndrome_gadget, ft_audit};
use qec_core::montecarlo::{build_decoder, exact_logical_rate, logical_error_rate_with};
use qec_core::noise::NoiseChannel;
use qec_core::pauli::{Pauli1, PauliOperator};

fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> PauliOperator {
    let mut p = PauliOperator::identity(n);
    for q in 0..n {
        p.set(q, Pauli1::ALL[rng.random_range(0..4)]);
    }
    p
}

fn pauli_kernels(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [9, 256] {
        let a = random_pauli(n, &mut rng);
        let b = random_pauli(n, &mut rng);
        c.bench_function(&format!("pauli_multiply_n{n}"), |bench| {
            bench.iter(|| black_box(&a).multiply(black_box(&b)).unwrap())
        });
        c.bench_function(&format!("pauli_commutes_n{n}"), |bench| {
            bench.iter(|| black_box(&a).commutes(black_box(&b)).unwrap())
        });
    }
}

fn code_kernels(c: &mut Criterion) {
    let steane = builtin("steane7").unwrap();
    let shor = builtin("shor9").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    c.bench_function("syndrome_steane7", |bench| {
        bench.iter_batched(
            || random_pauli(7, &mut rng),
            |e| steane.syndrome(&e).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("build_decoder_shor9", |bench| {
        bench.iter(|| build_decoder(black_box(&shor)).unwrap())
    });
    let dec = build_decoder(&steane).unwrap();
    let ch = NoiseChannel::depolarizing(0.01);
    c.bench_function("monte_carlo_steane7_10k", |bench| {
        bench.iter(|| logical_error_rate_with(&dec, &ch, 10_000, 7, 1).unwrap())
    });
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("exact_rate_shor9", |bench| {
        bench.iter(|| exact_logical_rate(&shor, &ch).unwrap())
    });
    let gadget = cat_syndrome_gadget(&steane, 0).unwrap();
    group.bench_function("ft_audit_cat_steane7", |bench| {
        bench.iter(|| ft_audit(&gadget, &steane).unwrap())
    });
    group.finish();
}

criterion_group!(benches, pauli_kernels, code_kernels);
criterion_main!(benches);
