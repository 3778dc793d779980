// SPDX-License-Identifier: Apache-2.0

use annulus_cp::analysis::{
    critical_angles, family_intervals, ring_force_zeros, torsion_free_analytic,
    torsion_free_heights, AnalyticCase, Family,
};
use annulus_cp::closed_forms::{
    disc_energy_atom, disc_energy_closed, plate_energy_closed, ring_energy_closed, DiscMode,
    RingComponent,
};
use annulus_cp::kernels::{
    atom_atom_cp, atom_atom_london_density, disc_energy_quadrature, plate_energy_quadrature,
    ring_energy_quadrature, DyadicKernel,
};
use annulus_cp::{AnnularPolarizability, AtomPolarizability, QuadratureSettings};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn disc_roots_over_outer_radius() {
    let bs = [1.01, 1.1, 2.0, 10.0, 100.0];
    for mode in DiscMode::ALL {
        let roots: Vec<Vec<f64>> = bs
            .iter()
            .map(|&b| {
                let fam = Family::Disc { mode, b };
                torsion_free_heights(&fam, fam.default_window()).unwrap()
            })
            .collect();
        for (r, b) in roots.iter().zip(bs) {
            assert_eq!(r.len(), 2, "{mode:?} b = {b}: {r:?}");
        }
        let lower: Vec<f64> = roots.iter().map(|r| r[0]).collect();
        let upper: Vec<f64> = roots.iter().map(|r| r[1]).collect();
        let monotone =
            |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]) || v.windows(2).all(|w| w[1] < w[0]);
        assert!(monotone(&lower), "{mode:?} lower {lower:?}");
        if mode == DiscMode::Axial {
            // The upper axial root overshoots its plate value near b ≈ 7a
            // before settling down.
            let plate = torsion_free_analytic(AnalyticCase::PlateAxial)[1];
            assert!(upper[3] > plate && upper[4] > plate);
            assert!(upper[3] > upper[4]);
        } else {
            assert!(monotone(&upper), "{mode:?} upper {upper:?}");
        }
    }
}

#[test]
fn disc_roots_approach_ring_and_plate() {
    let ring = |m: DiscMode| match m {
        DiscMode::Isotropic => AnalyticCase::RingInPlaneIsotropic,
        DiscMode::Radial => AnalyticCase::RingRadial,
        DiscMode::Axial => AnalyticCase::RingAxial,
    };
    for mode in DiscMode::ALL {
        let fam = Family::Disc { mode, b: 1.0001 };
        let narrow = torsion_free_heights(&fam, 20.0).unwrap();
        for (n, r) in narrow.iter().zip(torsion_free_analytic(ring(mode))) {
            assert!((n - r).abs() < 1e-3, "{mode:?}");
        }
    }
    let fam = Family::Disc {
        mode: DiscMode::Radial,
        b: 1e4,
    };
    let wide = torsion_free_heights(&fam, 20.0).unwrap();
    assert_eq!(wide.len(), 1);
    assert!((wide[0] - torsion_free_analytic(AnalyticCase::PlateRadial)[0]).abs() < 1e-6);
}

#[test]
fn doubling_window_changes_nothing() {
    for case in AnalyticCase::ALL {
        let a = torsion_free_heights(&case.family(), 20.0).unwrap();
        let b = torsion_free_heights(&case.family(), 40.0).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-11);
        }
    }
    let fam = Family::ring(RingComponent::Axial);
    let c20 = critical_angles(&fam, 20.0, 1e-8).unwrap();
    let c40 = critical_angles(&fam, 40.0, 1e-8).unwrap();
    assert_eq!(c20.len(), c40.len());
}

#[test]
fn radial_ring_edges_from_force_quadratic() {
    for t in [0.0f64, 10.0, 30.0, 88.0, 90.0] {
        let t = t.to_radians();
        let iv = family_intervals(&Family::ring(RingComponent::Radial), t, 20.0).unwrap();
        let mut edges: Vec<f64> = iv
            .iter()
            .flat_map(|i| [i.lo, i.hi])
            .filter(|&x| x > 0.0)
            .collect();
        edges.sort_by(f64::total_cmp);
        let zeros = ring_force_zeros(RingComponent::Radial, t).unwrap();
        assert_eq!(edges.len(), zeros.len());
        for (e, z) in edges.iter().zip(&zeros) {
            assert!((e - z).abs() < 1e-10);
        }
    }
}

#[test]
fn narrow_disc_quadrature_is_ring() {
    let s = QuadratureSettings::default();
    let k = DyadicKernel::casimir_polder();
    let atom = AtomPolarizability::new([1.0, 0.5, 0.3], 0.7, 0.4, 0.0);
    let pol = AnnularPolarizability::new(0.3, 1.0, 0.6);
    let eps = 1e-4;
    let disc =
        disc_energy_quadrature(&atom, &pol.scaled(1.0 / eps), 1.0, 1.0 + eps, 0.6, &k, &s).unwrap();
    let ring = ring_energy_quadrature(&atom, &pol, 1.0, 0.6, &k, &s).unwrap();
    assert!(rel(disc.value, ring.value) < 5.0 * eps);
    let closed = ring_energy_closed(&atom, &pol, 1.0, 0.6).unwrap();
    assert!(rel(closed, ring.value) < 1e-12);
}

#[test]
fn radial_disc_reference_point() {
    let s = QuadratureSettings::default();
    let atom = AtomPolarizability::uniaxial(1.0, 0.3);
    let q = disc_energy_quadrature(
        &atom,
        &AnnularPolarizability::radial(1.0),
        1.0,
        2.0,
        0.5,
        &DyadicKernel::casimir_polder(),
        &s,
    )
    .unwrap();
    let c = disc_energy_closed(DiscMode::Radial, 1.0, 2.0, 0.5, 0.3).unwrap();
    assert!(rel(c, q.value) < 1e-12);
}

#[test]
fn plate_forms_match_oracle_off_grid() {
    let s = QuadratureSettings::default();
    let k = DyadicKernel::casimir_polder();
    for mode in DiscMode::ALL {
        for &(h, t) in &[(0.0, 0.0), (0.33, 0.2), (2.7, 1.1), (7.5, 1.5)] {
            let atom = AtomPolarizability::uniaxial(1.0, t);
            let q =
                plate_energy_quadrature(&atom, &mode.polarizability(1.0), 1.4, h, &k, &s).unwrap();
            let c = plate_energy_closed(mode, 1.4, h, t).unwrap();
            assert!(
                (q.value - c).abs() <= 1e-11 * q.magnitude.max(1e-300),
                "{mode:?} {h} {t}"
            );
        }
    }
    let pol = AnnularPolarizability::new(0.2, 0.9, 0.5);
    let atom = AtomPolarizability::uniaxial(2.0, 0.8);
    let q = plate_energy_quadrature(&atom, &pol, 1.0, 0.9, &k, &s).unwrap();
    let c = disc_energy_atom(&atom, &pol, 1.0, f64::INFINITY, 0.9).unwrap();
    assert!(rel(c, q.value) < 1e-11);
}

#[test]
fn two_atom_limits() {
    let e = atom_atom_cp(2.0, 3.0, 1.7).unwrap();
    assert!(
        rel(
            e,
            -23.0 * 6.0 / (4.0 * std::f64::consts::PI * 1.7f64.powi(7))
        ) < 1e-14
    );
    let l = atom_atom_london_density(1.0, 1.0, 1.0).unwrap();
    assert!(rel(2.0 * l, -3.0 / std::f64::consts::PI) < 1e-14);
}

#[test]
fn london_kernel_keeps_tangential_ring_attractive() {
    let s = QuadratureSettings::default();
    let k = DyadicKernel::london();
    let ring = AnnularPolarizability::tangential(1.0);
    let mut last = f64::NEG_INFINITY;
    for i in 0..20 {
        let h = 0.25 * i as f64;
        let e = ring_energy_quadrature(
            &AtomPolarizability::uniaxial(1.0, 1.0),
            &ring,
            1.0,
            h,
            &k,
            &s,
        )
        .unwrap()
        .value;
        assert!(e < 0.0);
        assert!(e > last, "energy must rise towards zero with height");
        last = e;
    }
}
