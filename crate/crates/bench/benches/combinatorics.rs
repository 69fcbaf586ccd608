// SPDX-License-Identifier: Apache-2.0

use codebound::algebra::{BetaTable, KrawtchoukTable};
use codebound::bounds::TripleVariableSet;
use codebound::hamming::{build_gnd, greedy_code, independence_number};
use codebound::lasserre::SubsetIndex;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn independent_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("independence_number");
    group.sample_size(10);
    for (n, d) in [(6, 3), (7, 3), (8, 4)] {
        let g = build_gnd(n, d).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}_{d}")), &g, |b, g| {
            b.iter(|| independence_number(black_box(g)).unwrap())
        });
    }
    group.finish();
    c.bench_function("build_gnd/14_4", |b| b.iter(|| build_gnd(black_box(14), black_box(4)).unwrap()));
    c.bench_function("greedy_code/16_5", |b| b.iter(|| greedy_code(black_box(16), black_box(5)).unwrap()));
}

fn tables(c: &mut Criterion) {
    c.bench_function("krawtchouk_table/64", |b| b.iter(|| KrawtchoukTable::new(black_box(64))));
    let mut group = c.benchmark_group("beta_table");
    for n in [8, 16, 28] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| BetaTable::new(black_box(n))));
    }
    group.finish();
    c.bench_function("triple_variables/28_5", |b| b.iter(|| TripleVariableSet::new(black_box(28), black_box(5)).unwrap()));
    c.bench_function("subset_index/20_4", |b| b.iter(|| SubsetIndex::new(black_box(20), black_box(4)).unwrap()));
}

criterion_group!(benches, independent_sets, tables);
criterion_main!(benches);
