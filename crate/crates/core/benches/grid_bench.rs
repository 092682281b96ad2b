//! Compares the rayon grid path against the sequential reference on the
//! workloads that dominate runtime: circle minimization of |psi| and a
//! full sense-preserving margin sweep.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use harmonic_radius::grid;
use harmonic_radius::harmonic::{build_harmonic, Coupling, DilatationSpec, GridSpec};
use harmonic_radius::psi::PsiSpec;
use num_complex::Complex64;
use std::f64::consts::TAU;

fn circle_scan(c: &mut Criterion) {
    let spec = PsiSpec::Sine;
    let n = 4096usize;
    let eval = |i: usize| {
        let z = Complex64::from_polar(0.7, TAU * i as f64 / n as f64);
        spec.eval(z).unwrap().norm()
    };
    let mut group = c.benchmark_group("circle_min_modulus");
    group.bench_function(BenchmarkId::new("seq", n), |b| {
        b.iter(|| grid::argmin(&grid::map_indexed_seq(n, eval)))
    });
    group.bench_function(BenchmarkId::new("par", n), |b| {
        b.iter(|| grid::argmin(&grid::map_indexed_par(n, eval)))
    });
    group.finish();
}

fn margin_sweep(c: &mut Criterion) {
    let f = build_harmonic(
        &PsiSpec::Lemniscate,
        &DilatationSpec::Identity,
        Coupling::Product,
        64,
    )
    .unwrap();
    let g = GridSpec {
        radial: 128,
        angular: 256,
    };
    let npts = g.radial * g.angular;
    let margin_at = |k: usize| {
        let rr = 0.34 * (k / g.angular + 1) as f64 / g.radial as f64;
        let th = TAU * (k % g.angular) as f64 / g.angular as f64;
        let z = Complex64::from_polar(rr, th);
        f.h_prime(z).norm() - f.g_prime(z).norm()
    };
    let mut group = c.benchmark_group("sense_preserving_margin");
    group.bench_function(BenchmarkId::new("seq", npts), |b| {
        b.iter(|| grid::argmin(&grid::map_indexed_seq(npts, margin_at)))
    });
    group.bench_function(BenchmarkId::new("par", npts), |b| {
        b.iter(|| grid::argmin(&grid::map_indexed_par(npts, margin_at)))
    });
    group.finish();
}

criterion_group!(benches, circle_scan, margin_sweep);
criterion_main!(benches);
