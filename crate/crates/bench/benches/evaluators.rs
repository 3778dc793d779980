// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use annulus_cp::analysis::{torsion_free_heights, AnalyticCase, Family};
use annulus_cp::closed_forms::{disc_energy_closed, ring_energy_closed, DiscMode};
use annulus_cp::kernels::{disc_energy_quadrature, ring_energy_quadrature, DyadicKernel};
use annulus_cp::QuadratureSettings;
use annulus_cp_bench::{generic_annulus, generic_atom, heights};
use criterion::{criterion_group, criterion_main, Criterion};

fn closed_forms(c: &mut Criterion) {
    let atom = generic_atom();
    let ring = generic_annulus();
    let hs = heights(101);
    c.bench_function("ring closed sweep 101", |b| {
        b.iter(|| {
            hs.iter()
                .map(|&h| ring_energy_closed(&atom, &ring, 1.0, black_box(h)).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("disc closed sweep 101", |b| {
        b.iter(|| {
            hs.iter()
                .map(|&h| {
                    disc_energy_closed(DiscMode::Radial, 1.0, 2.0, black_box(h), 0.4).unwrap()
                })
                .sum::<f64>()
        })
    });
}

fn oracles(c: &mut Criterion) {
    let atom = generic_atom();
    let pol = generic_annulus();
    let k = DyadicKernel::casimir_polder();
    let s = QuadratureSettings::default();
    c.bench_function("ring oracle", |b| {
        b.iter(|| ring_energy_quadrature(&atom, &pol, 1.0, black_box(0.7), &k, &s).unwrap())
    });
    let mut g = c.benchmark_group("disc oracle");
    g.sample_size(20);
    g.bench_function("b=2", |b| {
        b.iter(|| disc_energy_quadrature(&atom, &pol, 1.0, 2.0, black_box(0.7), &k, &s).unwrap())
    });
    g.finish();
}

fn roots(c: &mut Criterion) {
    let ring = AnalyticCase::RingRadial.family();
    c.bench_function("torsion-free ring radial", |b| {
        b.iter(|| torsion_free_heights(black_box(&ring), 20.0).unwrap())
    });
    let disc = Family::Disc {
        mode: DiscMode::Axial,
        b: 2.0,
    };
    let mut g = c.benchmark_group("torsion-free disc");
    g.sample_size(20);
    g.bench_function("axial b=2", |b| {
        b.iter(|| torsion_free_heights(black_box(&disc), 20.0).unwrap())
    });
    g.finish();
}

criterion_group!(benches, closed_forms, oracles, roots);
criterion_main!(benches);
