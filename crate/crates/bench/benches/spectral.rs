//! Criterion benchmarks for the spectral pipeline.
//!
//! Grid sizes: 64, 256, 1024 modes.
//! Measures: one dealiased product, the full bidirectional forcing, and one
//! ETD-RK2 step of each model family.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dampwave_core::integrator::{BiStepper, Scheme, UniStepper};
use dampwave_core::models::{bi_forcing, make_initial, BiState, InitialPreset, ModelKind, ResolutionGuard};
use dampwave_core::spectral::dealiased_product;
use dampwave_core::{Grid, ModelParams, SpectralField};

const SIZES: [usize; 3] = [64, 256, 1024];

fn smooth(grid: &Grid, seed: u64) -> SpectralField {
    let preset = InitialPreset::RandomSmooth {
        amplitude: 1e-2,
        decay: 0.5,
        seed,
    };
    make_initial(&preset, grid).expect("valid preset")
}

fn params() -> ModelParams {
    ModelParams::new(0.5, 0.5, 1.0).expect("valid params")
}

fn bench_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("dealiased_product");
    for n in SIZES {
        let grid = Grid::new(n).unwrap();
        let (f, g) = (smooth(&grid, 1), smooth(&grid, 2));
        group.bench_with_input(BenchmarkId::new("modes", n), &n, |b, _| {
            b.iter(|| dealiased_product(black_box(&f), black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn bench_forcing(c: &mut Criterion) {
    let mut group = c.benchmark_group("bi_forcing");
    let p = params();
    for n in SIZES {
        let grid = Grid::new(n).unwrap();
        let state = BiState::new(smooth(&grid, 3), smooth(&grid, 4)).unwrap();
        for kind in [ModelKind::BiQuadratic, ModelKind::BiCubic] {
            group.bench_with_input(BenchmarkId::new(kind.name(), n), &n, |b, _| {
                b.iter(|| bi_forcing(black_box(&state), &p, kind, ResolutionGuard::Off).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("etd_rk2_step");
    let p = params();
    for n in SIZES {
        let grid = Grid::new(n).unwrap();
        let state = BiState::new(smooth(&grid, 5), smooth(&grid, 6)).unwrap();
        let bi = BiStepper::new(&grid, &p, ModelKind::BiQuadratic, Scheme::EtdRk2, 1e-3)
            .unwrap()
            .with_guard(ResolutionGuard::Off);
        group.bench_with_input(BenchmarkId::new("bi_quadratic", n), &n, |b, _| {
            b.iter(|| bi.step(black_box(&state), 0.0).unwrap())
        });
        let u = smooth(&grid, 7);
        let uni = UniStepper::new(&grid, &p, Scheme::EtdRk2, 1e-3)
            .unwrap()
            .with_guard(ResolutionGuard::Off);
        group.bench_with_input(BenchmarkId::new("unidirectional", n), &n, |b, _| {
            b.iter(|| uni.step(black_box(&u), 0.0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_product, bench_forcing, bench_step);
criterion_main!(benches);
