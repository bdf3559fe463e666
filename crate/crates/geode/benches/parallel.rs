//! Rayon vs sequential comparison for the data-parallel core, plus the
//! definitional-vs-recurrence route comparison on the 2D family.
//!
//! `cargo bench -p geode` runs the parallel table builder against the forced
//! sequential twin in one binary; building with `--no-default-features`
//! leaves only the sequential path.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use geode::closed2::{g2_closed, g2_fast, Pair};
use geode::index::MultiIndex;
use geode::oracle::{geode_number_oracle, geode_table_with_cap, geode_table_with_cap_seq};
use geode::DEFAULT_TERM_CAP;

fn bench_table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("geode_table_12_3");
    group.bench_function("parallel", |b| {
        b.iter(|| geode_table_with_cap(black_box(12), 3, DEFAULT_TERM_CAP).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| geode_table_with_cap_seq(black_box(12), 3, DEFAULT_TERM_CAP).unwrap())
    });
    group.finish();
}

fn bench_oracle_point(c: &mut Criterion) {
    c.bench_function("oracle_G_4_7_8", |b| {
        b.iter(|| geode_number_oracle(black_box(&MultiIndex::new(vec![4, 7, 8]))).unwrap())
    });
}

fn bench_2d_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("g2_300_300");
    group.bench_function("closed_form", |b| {
        b.iter(|| g2_closed(black_box(Pair::new(300, 300))))
    });
    group.bench_function("ratio_iteration", |b| {
        b.iter(|| g2_fast(black_box(Pair::new(300, 300))))
    });
    group.finish();
}

criterion_group!(benches, bench_table_build, bench_oracle_point, bench_2d_routes);
criterion_main!(benches);
