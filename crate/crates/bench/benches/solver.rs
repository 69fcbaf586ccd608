// SPDX-License-Identifier: Apache-2.0

use codebound::bounds::{build_schrijver, delsarte_lp, schrijver_sdp, BoundParams};
use codebound::hamming::Graph;
use codebound::lasserre::{las, theta_prime};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use std::time::Duration;

fn delsarte(c: &mut Criterion) {
    let params = BoundParams::default();
    let mut group = c.benchmark_group("delsarte_lp");
    for (n, d) in [(12, 4), (17, 4), (24, 8)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}_{d}")), &(n, d), |b, &(n, d)| {
            b.iter(|| delsarte_lp(black_box(n), black_box(d), &params).unwrap())
        });
    }
    group.finish();
}

fn schrijver(c: &mut Criterion) {
    let params = BoundParams::default();
    let mut group = c.benchmark_group("schrijver_sdp");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (n, d) in [(8, 3), (12, 4), (16, 6), (20, 6)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}_{d}")), &(n, d), |b, &(n, d)| {
            b.iter(|| schrijver_sdp(black_box(n), black_box(d), &params).unwrap())
        });
    }
    group.finish();

    c.bench_function("build_schrijver/20_6", |b| b.iter(|| build_schrijver(black_box(20), black_box(6)).unwrap()));
}

fn graphs(c: &mut Criterion) {
    let params = BoundParams::default();
    let petersen = Graph::petersen();
    let c5 = Graph::cycle(5).unwrap();
    c.bench_function("theta_prime/petersen", |b| b.iter(|| theta_prime(black_box(&petersen), &params).unwrap()));
    let mut group = c.benchmark_group("lasserre");
    group.sample_size(10);
    group.bench_function("c5_t2", |b| b.iter(|| las(black_box(&c5), 2, &params).unwrap()));
    group.bench_function("petersen_t2", |b| b.iter(|| las(black_box(&petersen), 2, &params).unwrap()));
    group.finish();
}

criterion_group!(benches, delsarte, schrijver, graphs);
criterion_main!(benches);
