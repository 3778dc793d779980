// SPDX-License-Identifier: Apache-2.0

//! Four-state cycle of an e1 atom above an axially polarizable ring.
//!
//! The atom is moved between the ring plane and a height h_e and flipped
//! between θ = 0 and θ = π/2. Energies are in units of
//! E₀ = 13ħcασ/(16πa⁶), forces in F₀ = E₀/a and heights in units of a.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::analysis::{torsion_free_analytic, AnalyticCase};
use crate::error::Result;
use crate::numerics::quadrature::{integrate, QuadratureSettings};

/// E₀ in natural units.
pub fn machine_e0(alpha: f64, sigma: f64, a: f64) -> f64 {
    13.0 * alpha * sigma / (16.0 * PI * a.powi(6))
}

pub fn machine_energy(h: f64, theta: f64) -> f64 {
    let x = h * h;
    let s = 1.0 + x;
    let c = (2.0 * theta).cos();
    -((26.0 + 3.0 * x + 40.0 * x * x) + (26.0 - 123.0 * x + 40.0 * x * x) * c)
        / (52.0 * s.powi(5) * s.sqrt())
}

pub fn machine_force(h: f64, theta: f64) -> f64 {
    let x = h * h;
    let s = 1.0 + x;
    let c = (2.0 * theta).cos();
    -7.0 * h * ((40.0 - 19.0 * x + 40.0 * x * x) + (76.0 - 181.0 * x + 40.0 * x * x) * c)
        / (52.0 * s.powi(6) * s.sqrt())
}

pub fn machine_torque(h: f64, theta: f64) -> f64 {
    let x = h * h;
    let s = 1.0 + x;
    -(26.0 - 123.0 * x + 40.0 * x * x) * (2.0 * theta).sin() / (26.0 * s.powi(5) * s.sqrt())
}

/// Lower torsion-free height √((123 − √10969)/80) ≈ 0.47785.
pub fn torsion_free_height() -> f64 {
    torsion_free_analytic(AnalyticCase::RingAxial)[0]
}

/// Height √(2/9) where the force vanishes at θ = π/2.
pub fn force_equilibrium_height() -> f64 {
    (2.0f64 / 9.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightChoice {
    TorsionFree,
    ForceEquilibrium,
}

impl HeightChoice {
    pub fn height(self) -> f64 {
        match self {
            HeightChoice::TorsionFree => torsion_free_height(),
            HeightChoice::ForceEquilibrium => force_equilibrium_height(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineState {
    pub label: char,
    pub h: f64,
    pub theta: f64,
    pub energy: f64,
}

/// Work done on the atom along each leg, A→B, B→C, C→D, D→A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Works {
    pub ab: f64,
    pub bc: f64,
    pub cd: f64,
    pub da: f64,
}

impl Works {
    pub fn total(&self) -> f64 {
        self.ab + self.bc + self.cd + self.da
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.ab, self.bc, self.cd, self.da]
    }

    pub fn max_abs_diff(&self, o: &Works) -> f64 {
        self.as_array()
            .iter()
            .zip(o.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub choice: HeightChoice,
    pub h_e: f64,
    pub h_torsion_free: f64,
    pub h_force_equilibrium: f64,
    pub states: [MachineState; 4],
    /// Differences of the state energies.
    pub works_energy: Works,
    /// −∫τ dθ and −∫F dh along each leg.
    pub works_line: Works,
    /// |Σ W| from the line integrals.
    pub closure_residual: f64,
    /// Largest leg mismatch between the two routes.
    pub leg_mismatch: f64,
    /// W_{C→D} if h_e were the force-equilibrium height instead.
    pub w_cd_at_equilibrium: f64,
}

pub fn cycle_report(choice: HeightChoice) -> Result<CycleReport> {
    let he = choice.height();
    let corners = [
        ('A', 0.0, 0.0),
        ('B', 0.0, FRAC_PI_2),
        ('C', he, FRAC_PI_2),
        ('D', he, 0.0),
    ];
    let states = corners.map(|(label, h, theta)| MachineState {
        label,
        h,
        theta,
        energy: machine_energy(h, theta),
    });
    let e = |k: usize| states[k].energy;
    let works_energy = Works {
        ab: e(1) - e(0),
        bc: e(2) - e(1),
        cd: e(3) - e(2),
        da: e(0) - e(3),
    };

    let settings = QuadratureSettings::default().with_rel_tol(1e-13);
    let turn = |h: f64, from: f64, to: f64| -> Result<f64> {
        Ok(-integrate(|t| machine_torque(h, t), from, to, &settings)?.value)
    };
    let lift = |theta: f64, from: f64, to: f64| -> Result<f64> {
        Ok(-integrate(|h| machine_force(h, theta), from, to, &settings)?.value)
    };
    let works_line = Works {
        ab: turn(0.0, 0.0, FRAC_PI_2)?,
        bc: lift(FRAC_PI_2, 0.0, he)?,
        cd: turn(he, FRAC_PI_2, 0.0)?,
        da: lift(0.0, he, 0.0)?,
    };
    let heq = force_equilibrium_height();
    Ok(CycleReport {
        choice,
        h_e: he,
        h_torsion_free: torsion_free_height(),
        h_force_equilibrium: heq,
        states,
        works_energy,
        works_line,
        closure_residual: works_line.total().abs(),
        leg_mismatch: works_line.max_abs_diff(&works_energy),
        w_cd_at_equilibrium: machine_energy(heq, 0.0) - machine_energy(heq, FRAC_PI_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{
        force_numeric, ring_energy_closed, ring_force_closed, AtomAxis, RingComponent,
    };
    use crate::tensors::{AnnularPolarizability, AtomPolarizability};

    #[test]
    fn ground_state_is_minus_e0() {
        assert_eq!(machine_energy(0.0, 0.0), -1.0);
        assert_eq!(machine_energy(0.0, FRAC_PI_2), 0.0);
    }

    #[test]
    fn matches_axial_ring_in_e0_units() {
        let e0 = machine_e0(1.0, 1.0, 1.0);
        for &(h, t) in &[(0.3, 0.2), (1.1, 1.0), (2.0, 1.5)] {
            let ring = ring_energy_closed(
                &AtomPolarizability::uniaxial(1.0, t),
                &AnnularPolarizability::axial(1.0),
                1.0,
                h,
            )
            .unwrap();
            assert!((ring / e0 - machine_energy(h, t)).abs() < 1e-14);
            let f =
                ring_force_closed(AtomAxis::E1, RingComponent::Axial, 1.0, 1.0, 1.0, h, t).unwrap();
            assert!((f / e0 - machine_force(h, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn torque_vanishes_at_cycle_orientations() {
        for &h in &[0.0, 0.3, 0.9, 4.0] {
            assert_eq!(machine_torque(h, 0.0), 0.0);
            assert!(machine_torque(h, FRAC_PI_2).abs() < 1e-15);
        }
    }

    #[test]
    fn force_changes_sign_at_equilibrium() {
        let he = force_equilibrium_height();
        assert!(machine_force(he - 1e-3, FRAC_PI_2) > 0.0);
        assert!(machine_force(he + 1e-3, FRAC_PI_2) < 0.0);
        assert!(machine_force(he, FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn gradients() {
        let f = force_numeric(|h| machine_energy(h, 0.4), 0.7, 1.0).unwrap();
        assert!((f - machine_force(0.7, 0.4)).abs() < 1e-10);
    }

    #[test]
    fn torsion_free_cycle() {
        let r = cycle_report(HeightChoice::TorsionFree).unwrap();
        assert!((r.h_e - 0.477_85).abs() < 1e-5);
        assert!(r.works_energy.cd.abs() < 1e-12);
        assert!(r.works_energy.ab > 0.0 && r.works_energy.bc < 0.0 && r.works_energy.da < 0.0);
        assert!((r.works_energy.ab - 1.0).abs() < 1e-15);
        assert!(r.works_energy.total().abs() < 1e-15);
        assert!(r.closure_residual < 1e-10);
        assert!(r.leg_mismatch < 1e-10);
        assert!(r.w_cd_at_equilibrium.abs() > 1e-4);
    }

    #[test]
    fn equilibrium_cycle_has_nonzero_flip_work() {
        let r = cycle_report(HeightChoice::ForceEquilibrium).unwrap();
        assert!((r.works_energy.cd - r.w_cd_at_equilibrium).abs() < 1e-15);
        assert!(r.leg_mismatch < 1e-10);
    }
}
