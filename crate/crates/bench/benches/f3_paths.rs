//! `f_3` by the literal triple loop, the coset-parametrised oracle and the
//! character formula, plus `t_3` and table construction.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use commeq::counts::{brute_f3_naive, brute_f_n, brute_t_n, count_from_coeffs, f3_coeffs, t_coeffs};
use commeq::{build_table, CountKind, Provider, DEFAULT_BUDGET};
use commeq_bench::{prepared, F3_GROUPS};

fn f3_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("f3");
    group.sample_size(10);
    for spec in F3_GROUPS {
        let (g, t) = prepared(spec);
        group.bench_with_input(BenchmarkId::new("naive", spec), &g, |b, g| {
            b.iter(|| brute_f3_naive(black_box(g), DEFAULT_BUDGET).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("coset", spec), &g, |b, g| {
            b.iter(|| brute_f_n(black_box(g), 3, None, DEFAULT_BUDGET).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("character", spec), &t, |b, t| {
            b.iter(|| {
                let a = f3_coeffs(black_box(t)).unwrap();
                count_from_coeffs(t, &a, CountKind::F, 3).unwrap()
            })
        });
    }
    group.finish();
}

fn t3_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("t3");
    group.sample_size(10);
    for spec in ["symmetric:5", "dihedral:100"] {
        let (g, t) = prepared(spec);
        group.bench_with_input(BenchmarkId::new("brute", spec), &g, |b, g| {
            b.iter(|| brute_t_n(black_box(g), 3, DEFAULT_BUDGET).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("character", spec), &t, |b, t| {
            b.iter(|| {
                let a = t_coeffs(black_box(t), 3).unwrap();
                count_from_coeffs(t, &a, CountKind::T, 3).unwrap()
            })
        });
    }
    group.finish();
}

fn table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    for spec in ["symmetric:5", "dihedral:100"] {
        let (g, _) = prepared(spec);
        group.bench_with_input(BenchmarkId::new("build+validate", spec), &g, |b, g| {
            b.iter(|| build_table(black_box(g), &Provider::Auto).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, f3_paths, t3_paths, table_build);
criterion_main!(benches);
