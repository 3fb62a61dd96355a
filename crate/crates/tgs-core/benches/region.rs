//! Parallel versus sequential region evaluation, plus the two kernels
//! everything else is built from.

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use tgs_core::gersgorin::gersgorin;
use tgs_core::minimal::v_of_z;
use tgs_core::raster::{raster_membership, raster_membership_seq};
use tgs_core::spectral::{nqz_spectral_radius, NqzOptions};
use tgs_core::tensor::ComplexTensor;

fn sample() -> ComplexTensor {
    let c = |re: f64| Complex64::new(re, 0.0);
    ComplexTensor::new(
        3,
        3,
        vec![
            (vec![0, 0, 0], c(2.0)),
            (vec![0, 1, 2], c(1.0)),
            (vec![0, 2, 2], c(1.0)),
            (vec![1, 1, 1], c(2.0)),
            (vec![1, 2, 0], c(1.0)),
            (vec![2, 0, 0], c(1.0)),
            (vec![2, 0, 1], c(1.0)),
            (vec![2, 1, 1], c(1.0)),
            (vec![2, 2, 2], c(1.0)),
        ],
    )
    .unwrap()
}

fn bench_raster(c: &mut Criterion) {
    let a = sample();
    let rect = gersgorin(&a).bounding_box(0.1);
    let mut group = c.benchmark_group("raster_48x36");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| raster_membership(&a, &rect, 48, 36, 1e-6).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| raster_membership_seq(&a, &rect, 48, 36, 1e-6).unwrap())
    });
    group.finish();
}

fn bench_kernels(c: &mut Criterion) {
    let a = sample();
    c.bench_function("v_of_z", |b| {
        b.iter(|| v_of_z(&a, Complex64::new(1.3, 0.7), 1e-10))
    });
    let (_, comparison, _) = tgs_core::minimal::build_comparison(&a, Complex64::new(1.3, 0.7));
    c.bench_function("nqz", |b| {
        b.iter(|| nqz_spectral_radius(&comparison, &NqzOptions::default()).unwrap())
    });
}

criterion_group!(benches, bench_raster, bench_kernels);
criterion_main!(benches);
