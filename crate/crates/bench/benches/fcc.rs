use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fcc_core::channel::monte_carlo;
use fcc_core::construct::{weight_encoder, CodeChoice};
use fcc_core::drm::weight_drm;
use fcc_core::gray::reflected_gray;
use fcc_core::linear::{belov, min_distance, simplex};
use fcc_core::solver::solve_nd;
use fcc_core::verify::verify_full;

fn gray(c: &mut Criterion) {
    c.bench_function("reflected_gray/16", |b| {
        b.iter(|| reflected_gray(black_box(16)).unwrap())
    });
}

fn linear(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_distance");
    for m in [8, 12, 16] {
        let g = simplex(m).unwrap();
        group.bench_with_input(BenchmarkId::new("simplex", m), &g, |b, g| {
            b.iter(|| min_distance(g).unwrap())
        });
    }
    group.finish();
    c.bench_function("belov/40", |b| b.iter(|| belov(black_box(40)).unwrap()));
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_nd");
    for (k, t) in [(6, 1), (7, 2), (40, 2)] {
        let d = weight_drm(k, t);
        group.bench_with_input(BenchmarkId::new(format!("t{t}"), k), &d, |b, d| {
            b.iter(|| solve_nd(d, 8).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let table = weight_encoder(10, 3, CodeChoice::Auto).unwrap();
    c.bench_function("verify_full/k10_t3", |b| {
        b.iter(|| verify_full(&table).unwrap())
    });
    c.bench_function("monte_carlo/1000", |b| {
        b.iter(|| monte_carlo(&table, 1000, black_box(7)).unwrap())
    });
}

criterion_group!(benches, gray, linear, solver, verification);
criterion_main!(benches);
