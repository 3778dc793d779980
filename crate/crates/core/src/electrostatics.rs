// SPDX-License-Identifier: Apache-2.0

//! Permanent point dipole on the axis of a ring carrying a dipole density.
//!
//! Units: 1/(4πε₀) = 1. With p, λ and a set to one the energy comes out
//! in units of pλ/(4πε₀a²).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_periodic, QuadResult, QuadratureSettings};
use crate::tensors::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDipole {
    pub p: Vec3,
}

impl PointDipole {
    /// Dipole of magnitude `p` tilted by `theta` from ẑ towards x̂.
    pub fn tilted(p: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        PointDipole {
            p: Vec3::new(p * s, 0.0, p * c),
        }
    }
}

/// Direction of the ring's dipole density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingPolarization {
    Tangential,
    Axial,
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizedRing {
    pub a: f64,
    pub direction: RingPolarization,
    /// Dipole moment per unit length.
    pub lambda: f64,
}

impl PolarizedRing {
    pub fn new(a: f64, direction: RingPolarization, lambda: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "ring radius must be positive, got {a}"
            )));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter(
                "dipole density must be finite".into(),
            ));
        }
        Ok(PolarizedRing {
            a,
            direction,
            lambda,
        })
    }

    fn density(&self, phi: f64) -> Vec3 {
        let dir = match self.direction {
            RingPolarization::Tangential => Vec3::tangential(phi),
            RingPolarization::Axial => Vec3::Z,
            RingPolarization::Radial => Vec3::radial(phi),
        };
        dir * self.lambda
    }
}

/// E = 2πa pλ cosθ (a² − 2h²)/(a² + h²)^{5/2} for an axially polarized ring.
pub fn es_energy_axial(p: f64, lambda: f64, a: f64, h: f64, theta: f64) -> f64 {
    let r2 = a * a + h * h;
    2.0 * PI * a * p * lambda * theta.cos() * (a * a - 2.0 * h * h) / (r2 * r2 * r2.sqrt())
}

/// F = −∂E/∂h = 2πa pλ cosθ · 3h(3a² − 2h²)/(a² + h²)^{7/2}.
pub fn es_force_axial(p: f64, lambda: f64, a: f64, h: f64, theta: f64) -> f64 {
    let r2 = a * a + h * h;
    2.0 * PI * a * p * lambda * theta.cos() * 3.0 * h * (3.0 * a * a - 2.0 * h * h)
        / (r2 * r2 * r2 * r2.sqrt())
}

/// τ = −∂E/∂θ = 2πa pλ sinθ (a² − 2h²)/(a² + h²)^{5/2}.
pub fn es_torque_axial(p: f64, lambda: f64, a: f64, h: f64, theta: f64) -> f64 {
    let r2 = a * a + h * h;
    2.0 * PI * a * p * lambda * theta.sin() * (a * a - 2.0 * h * h) / (r2 * r2 * r2.sqrt())
}

/// Dipole–dipole energy density for ring element at φ, dipole moment `p`.
fn pair(p: Vec3, lam: Vec3, r: Vec3) -> f64 {
    let r2 = r.dot(r);
    let r1 = r2.sqrt();
    (p.dot(lam) - 3.0 * p.dot(r) * lam.dot(r) / r2) / (r2 * r1)
}

/// ∂/∂h of [`pair`] with r = hẑ − aρ̂.
fn pair_dh(p: Vec3, lam: Vec3, r: Vec3) -> f64 {
    let r2 = r.dot(r);
    let r1 = r2.sqrt();
    let r5 = r2 * r2 * r1;
    let h = r.z;
    let (pr, lr) = (p.dot(r), lam.dot(r));
    -3.0 * p.dot(lam) * h / r5 - 3.0 * (p.z * lr + pr * lam.z) / r5 + 15.0 * pr * lr * h / (r5 * r2)
}

/// `bound` caps |f| in units of |p||λ|/r³ (energy) or /r⁴ (force); it
/// sets the round-off floor for integrals that cancel exactly.
fn ring_integral<F: Fn(Vec3, Vec3) -> f64>(
    ring: &PolarizedRing,
    h: f64,
    p: Vec3,
    bound: (f64, i32),
    settings: &QuadratureSettings,
    f: F,
) -> Result<QuadResult> {
    let a = ring.a;
    let r = (a * a + h * h).sqrt();
    let floor =
        64.0 * f64::EPSILON * 2.0 * PI * bound.0 * p.norm() * ring.lambda.abs() / r.powi(bound.1);
    let settings = &settings.with_abs_floor(floor);
    let r = integrate_periodic(
        |phi| f(ring.density(phi), Vec3::Z * h - Vec3::radial(phi) * a),
        settings,
    )?;
    Ok(QuadResult {
        value: a * r.value,
        error: a * r.error,
        magnitude: a * r.magnitude,
        evaluations: r.evaluations,
    })
}

/// ∫ a dφ [p·λ − 3(p·r̂)(r̂·λ)]/r³ with r from the ring element to the dipole.
pub fn es_energy_quadrature(
    dipole: &PointDipole,
    ring: &PolarizedRing,
    h: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    ring_integral(ring, h, dipole.p, (4.0, 3), settings, |lam, r| {
        pair(dipole.p, lam, r)
    })
}

/// −∂E/∂h from the differentiated integrand.
pub fn es_force_quadrature(
    dipole: &PointDipole,
    ring: &PolarizedRing,
    h: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    let r = ring_integral(ring, h, dipole.p, (21.0, 4), settings, |lam, r| {
        pair_dh(dipole.p, lam, r)
    })?;
    Ok(QuadResult {
        value: -r.value,
        ..r
    })
}

/// −∂E/∂θ for a rotation of the dipole about ŷ (θ measured from ẑ
/// towards x̂).
pub fn es_torque_quadrature(
    dipole: &PointDipole,
    ring: &PolarizedRing,
    h: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    let dp = Vec3::Y.cross(dipole.p);
    let r = ring_integral(ring, h, dp, (4.0, 3), settings, |lam, r| pair(dp, lam, r))?;
    Ok(QuadResult {
        value: -r.value,
        ..r
    })
}

/// Height a/√2 where the axial-ring energy vanishes for every θ.
pub fn es_zero_height(a: f64) -> f64 {
    a / 2f64.sqrt()
}
