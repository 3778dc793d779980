// SPDX-License-Identifier: Apache-2.0

//! Grid comparison of every closed form against its quadrature oracle.
//!
//! The error of a point is |closed − oracle| divided by the larger of the
//! point's own ∫|integrand| and a thousandth of the largest ∫|integrand| at
//! the same height. For integrands of one sign this is the ordinary
//! relative error; where a term vanishes identically (sin²θ at θ = 0, say)
//! it stays finite instead of dividing round-off by round-off.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    disc_energy_closed, plate_energy_closed, ring_force_closed, ring_term, AtomAxis, DiscMode,
    RingComponent,
};
use crate::electrostatics::{
    es_energy_axial, es_energy_quadrature, es_force_axial, es_force_quadrature, es_torque_axial,
    es_torque_quadrature, PointDipole, PolarizedRing, RingPolarization,
};
use crate::error::Result;
use crate::kernels::{disc_quadrature, ring_quadrature, DyadicKernel, Observable};
use crate::machine::{machine_e0, machine_energy, machine_force, machine_torque};
use crate::numerics::quadrature::{QuadResult, QuadratureSettings};
use crate::tensors::AtomPolarizability;

/// Sample grid in reduced units (a = 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyGrid {
    pub heights: Vec<f64>,
    /// Radians.
    pub thetas: Vec<f64>,
    /// Radians; only used by the ê₂ and ê₃ ring terms.
    pub betas: Vec<f64>,
    /// Outer radius for the disc checks.
    pub disc_b: f64,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid {
            heights: (0..=50).map(|k| 0.1 * k as f64).collect(),
            thetas: (0..=6).map(|k| (15.0 * k as f64).to_radians()).collect(),
            betas: [0.0f64, 45.0, 90.0]
                .iter()
                .map(|d| d.to_radians())
                .collect(),
            disc_b: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub h: f64,
    pub theta: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub name: String,
    pub points: usize,
    pub max_error: f64,
    pub worst: Point,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub cases: Vec<CaseReport>,
    pub pass: bool,
}

type Eval = Box<dyn Fn(Point) -> Result<(f64, QuadResult)> + Send + Sync>;

struct Case {
    name: String,
    uses_beta: bool,
    eval: Eval,
}

fn cases(grid: &VerifyGrid, settings: QuadratureSettings) -> Vec<Case> {
    let k = DyadicKernel::casimir_polder();
    let mut out = Vec::new();
    let axis_name = |a: AtomAxis| match a {
        AtomAxis::E1 => "e1",
        AtomAxis::E2 => "e2",
        AtomAxis::E3 => "e3",
    };
    let comp_name = |c: RingComponent| match c {
        RingComponent::Tangential => "tangential",
        RingComponent::Radial => "radial",
        RingComponent::Axial => "axial",
    };
    for axis in AtomAxis::ALL {
        for comp in RingComponent::ALL {
            out.push(Case {
                name: format!("ring energy {} {}", axis_name(axis), comp_name(comp)),
                uses_beta: axis != AtomAxis::E1,
                eval: Box::new(move |p| {
                    let atom = AtomPolarizability::single_axis(axis.index(), p.theta, p.beta, 0.0);
                    let q = ring_quadrature(
                        Observable::Energy,
                        &atom,
                        &comp.unit(),
                        1.0,
                        p.h,
                        &k,
                        &settings,
                    )?;
                    Ok((ring_term(axis, comp, p.h, p.theta, p.beta), q))
                }),
            });
        }
    }
    let mode_name = |m: DiscMode| match m {
        DiscMode::Isotropic => "isotropic",
        DiscMode::Radial => "radial",
        DiscMode::Axial => "axial",
    };
    let b = grid.disc_b;
    for mode in DiscMode::ALL {
        out.push(Case {
            name: format!("disc energy {} b={b}", mode_name(mode)),
            uses_beta: false,
            eval: Box::new(move |p| {
                let atom = AtomPolarizability::uniaxial(1.0, p.theta);
                let q = disc_quadrature(
                    Observable::Energy,
                    &atom,
                    &mode.polarizability(1.0),
                    1.0,
                    b,
                    p.h,
                    &k,
                    &settings,
                )?;
                Ok((disc_energy_closed(mode, 1.0, b, p.h, p.theta)?, q))
            }),
        });
    }
    for mode in DiscMode::ALL {
        out.push(Case {
            name: format!("plate energy {}", mode_name(mode)),
            uses_beta: false,
            eval: Box::new(move |p| {
                let atom = AtomPolarizability::uniaxial(1.0, p.theta);
                let q = disc_quadrature(
                    Observable::Energy,
                    &atom,
                    &mode.polarizability(1.0),
                    1.0,
                    f64::INFINITY,
                    p.h,
                    &k,
                    &settings,
                )?;
                Ok((plate_energy_closed(mode, 1.0, p.h, p.theta)?, q))
            }),
        });
    }
    for comp in [RingComponent::Radial, RingComponent::Axial] {
        out.push(Case {
            name: format!("ring force e1 {}", comp_name(comp)),
            uses_beta: false,
            eval: Box::new(move |p| {
                let atom = AtomPolarizability::uniaxial(1.0, p.theta);
                let q = ring_quadrature(
                    Observable::Force,
                    &atom,
                    &comp.unit(),
                    1.0,
                    p.h,
                    &k,
                    &settings,
                )?;
                Ok((
                    ring_force_closed(AtomAxis::E1, comp, 1.0, 1.0, 1.0, p.h, p.theta)?,
                    q,
                ))
            }),
        });
    }
    let e0 = machine_e0(1.0, 1.0, 1.0);
    for (name, obs, f) in [
        (
            "machine energy",
            Observable::Energy,
            machine_energy as fn(f64, f64) -> f64,
        ),
        ("machine force", Observable::Force, machine_force),
        ("machine torque", Observable::Torque, machine_torque),
    ] {
        out.push(Case {
            name: name.into(),
            uses_beta: false,
            eval: Box::new(move |p| {
                let atom = AtomPolarizability::uniaxial(1.0, p.theta);
                let q = ring_quadrature(
                    obs,
                    &atom,
                    &RingComponent::Axial.unit(),
                    1.0,
                    p.h,
                    &k,
                    &settings,
                )?;
                Ok((e0 * f(p.h, p.theta), q))
            }),
        });
    }
    let ring = PolarizedRing {
        a: 1.0,
        direction: RingPolarization::Axial,
        lambda: 1.0,
    };
    type EsOracle =
        fn(&PointDipole, &PolarizedRing, f64, &QuadratureSettings) -> Result<QuadResult>;
    for (name, closed, oracle) in [
        (
            "dipole energy axial",
            es_energy_axial as fn(f64, f64, f64, f64, f64) -> f64,
            es_energy_quadrature as EsOracle,
        ),
        ("dipole force axial", es_force_axial, es_force_quadrature),
        ("dipole torque axial", es_torque_axial, es_torque_quadrature),
    ] {
        out.push(Case {
            name: name.into(),
            uses_beta: false,
            eval: Box::new(move |p| {
                let q = oracle(&PointDipole::tilted(1.0, p.theta), &ring, p.h, &settings)?;
                Ok((closed(1.0, 1.0, 1.0, p.h, p.theta), q))
            }),
        });
    }
    out
}

/// Fraction of the per-height scale below which a value counts as zero.
pub const ZERO_FRACTION: f64 = 1e-3;

/// Normalised discrepancy; `row_scale` is the largest ∫|f| at this height.
pub fn discrepancy(closed: f64, oracle: &QuadResult, row_scale: f64) -> f64 {
    let d = (closed - oracle.value).abs();
    let scale = oracle
        .magnitude
        .max(oracle.value.abs())
        .max(ZERO_FRACTION * row_scale);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

/// Runs every closed-form case over the grid.
pub fn verify_all(
    grid: &VerifyGrid,
    tolerance: f64,
    settings: &QuadratureSettings,
) -> Result<VerifyReport> {
    settings.validate()?;
    let mut reports = Vec::new();
    for case in cases(grid, *settings) {
        let betas: &[f64] = if case.uses_beta { &grid.betas } else { &[0.0] };
        let points: Vec<Point> = grid
            .heights
            .iter()
            .flat_map(|&h| {
                grid.thetas
                    .iter()
                    .flat_map(move |&theta| betas.iter().map(move |&beta| Point { h, theta, beta }))
            })
            .collect();
        let pairs = points
            .par_iter()
            .map(|&p| (case.eval)(p))
            .collect::<Result<Vec<_>>>()?;
        let row_scale = |h: f64| {
            points
                .iter()
                .zip(&pairs)
                .filter(|(p, _)| p.h == h)
                .map(|(_, (_, q))| q.magnitude)
                .fold(0.0, f64::max)
        };
        let errors: Vec<f64> = points
            .iter()
            .zip(&pairs)
            .map(|(p, (c, q))| discrepancy(*c, q, row_scale(p.h)))
            .collect();
        let (k, &max_error) = errors
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap_or((0, &0.0));
        reports.push(CaseReport {
            name: case.name,
            points: points.len(),
            max_error,
            worst: points.get(k).copied().unwrap_or(Point {
                h: 0.0,
                theta: 0.0,
                beta: 0.0,
            }),
            pass: max_error <= tolerance,
        });
    }
    let pass = reports.iter().all(|c| c.pass);
    Ok(VerifyReport {
        tolerance,
        cases: reports,
        pass,
    })
}

/// A reduced grid for quick runs: every fifth height and three angles.
pub fn coarse_grid() -> VerifyGrid {
    VerifyGrid {
        heights: (0..=10).map(|k| 0.5 * k as f64).collect(),
        thetas: vec![0.0, PI / 6.0, PI / 2.0],
        betas: vec![0.0, PI / 4.0, PI / 2.0],
        disc_b: 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_passes() {
        let r = verify_all(&coarse_grid(), 1e-9, &QuadratureSettings::default()).unwrap();
        assert_eq!(r.cases.len(), 23);
        for c in &r.cases {
            assert!(c.pass, "{} {:e}", c.name, c.max_error);
        }
    }

    #[test]
    fn discrepancy_handles_zero() {
        let q = QuadResult {
            value: 0.0,
            error: 0.0,
            magnitude: 0.0,
            evaluations: 1,
        };
        assert_eq!(discrepancy(0.0, &q, 0.0), 0.0);
    }
}
