// SPDX-License-Identifier: Apache-2.0

//! Direct quadrature of the dilute-dielectric Casimir-Polder integral.
//!
//! For an atom of polarizability α at height h on the symmetry axis and a
//! dielectric of susceptibility χ in the plane z = 0,
//!
//! ```text
//! E = P ∫ d³x r⁻ᵖ [ c_tr tr(α·χ) + c_cross r̂·α·χ·r̂ + c_dd (r̂·α·r̂)(r̂·χ·r̂) ]
//! ```
//!
//! with r = x − hẑ. This module evaluates that integral numerically for
//! rings, annular discs and apertured plates, independently of the
//! closed-form polynomials in [`crate::closed_forms`]. Forces and torques
//! are integrated from the analytic h- and θ-derivatives of the integrand,
//! not by differencing energies.
//!
//! Natural units: ħc = 1, every length in one common unit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::numerics::quadrature::QuadratureSettings;
use crate::numerics::quadrature::{
    integrate_periodic_with_magnitude, integrate_to_infinity_with_magnitude,
    integrate_with_magnitude, QuadResult,
};
use crate::tensors::{
    annulus_frame_tensor, rhat_on_axis, AnnularPolarizability, AtomPolarizability, Geometry,
    SymTensor3, Vec3,
};

/// Coefficients of the three tensor contractions and the distance power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicKernel {
    pub c_tr: f64,
    pub c_cross: f64,
    pub c_dd: f64,
    pub power: i32,
    /// Overall constant in units of ħc.
    pub prefactor: f64,
}

impl DyadicKernel {
    /// Retarded kernel (13, −56, 63) / r⁷ with prefactor −1/(32π²).
    pub fn casimir_polder() -> Self {
        DyadicKernel {
            c_tr: 13.0,
            c_cross: -56.0,
            c_dd: 63.0,
            power: 7,
            prefactor: -1.0 / (32.0 * PI * PI),
        }
    }

    /// Non-retarded kernel (1, −6, 9) / r⁶.
    ///
    /// The prefactor −1/(16π²) multiplies an integral over imaginary
    /// frequency that this crate does not perform: values produced with this
    /// kernel are the integrand per unit ∫dζ over the full real line and are
    /// only meaningful for comparing shapes.
    pub fn london() -> Self {
        DyadicKernel {
            c_tr: 1.0,
            c_cross: -6.0,
            c_dd: 9.0,
            power: 6,
            prefactor: -1.0 / (16.0 * PI * PI),
        }
    }
}

/// c_tr tr(α·χ) + c_cross (r̂·α·χ·r̂) + c_dd (r̂·α·r̂)(r̂·χ·r̂).
#[inline]
pub fn kernel_bracket(
    alpha: &SymTensor3,
    chi: &SymTensor3,
    rhat: Vec3,
    kernel: &DyadicKernel,
) -> f64 {
    let ar = alpha.apply(rhat);
    let cr = chi.apply(rhat);
    kernel.c_tr * alpha.contract(chi)
        + kernel.c_cross * ar.dot(cr)
        + kernel.c_dd * rhat.dot(ar) * rhat.dot(cr)
}

/// Directional derivative of [`kernel_bracket`] when r̂ moves by `drhat`.
#[inline]
fn kernel_bracket_variation(
    alpha: &SymTensor3,
    chi: &SymTensor3,
    rhat: Vec3,
    drhat: Vec3,
    kernel: &DyadicKernel,
) -> f64 {
    let ar = alpha.apply(rhat);
    let cr = chi.apply(rhat);
    let ad = alpha.apply(drhat);
    let cd = chi.apply(drhat);
    kernel.c_cross * (ad.dot(cr) + ar.dot(cd))
        + kernel.c_dd * 2.0 * (drhat.dot(ar) * rhat.dot(cr) + rhat.dot(ar) * drhat.dot(cr))
}

/// Which derivative of the energy to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Energy,
    /// F = −∂E/∂h; positive pushes the atom towards +h.
    Force,
    /// τ = −∂E/∂θ.
    Torque,
}

/// Multiple of machine epsilon treated as pure round-off.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

struct Integrand<'a> {
    observable: Observable,
    alpha: SymTensor3,
    pol: &'a AnnularPolarizability,
    kernel: &'a DyadicKernel,
    h: f64,
}

impl Integrand<'_> {
    fn new<'a>(
        observable: Observable,
        atom: &AtomPolarizability,
        pol: &'a AnnularPolarizability,
        h: f64,
        kernel: &'a DyadicKernel,
    ) -> Integrand<'a> {
        let alpha = match observable {
            Observable::Torque => atom.tensor_dtheta() * -1.0,
            _ => atom.tensor(),
        };
        Integrand {
            observable,
            alpha,
            pol,
            kernel,
            h,
        }
    }

    /// Power q and coefficient C with |density| ≤ C r⁻q for any orientation,
    /// used to set a round-off floor when contributions cancel.
    fn bound(&self) -> (f64, f64) {
        let k = self.kernel;
        let sum_c = k.c_tr.abs() + k.c_cross.abs() + k.c_dd.abs();
        let sum_alpha = self
            .alpha
            .to_array()
            .iter()
            .flatten()
            .map(|v| v.abs())
            .sum::<f64>();
        let sum_chi = self.pol.comp_z.abs() + self.pol.comp_rho.abs() + self.pol.comp_phi.abs();
        let c = k.prefactor.abs() * sum_c * sum_alpha * sum_chi;
        let p = k.power as f64;
        match self.observable {
            Observable::Force => (p + 1.0, c * (p + 4.0)),
            _ => (p, c),
        }
    }

    fn noise_floor(&self, rho: f64) -> f64 {
        let (q, c) = self.bound();
        ROUNDOFF * 2.0 * PI * c * (rho * rho + self.h * self.h).powf(-0.5 * q)
    }

    /// Same floor for ∫ρ dρ between `a` and `b`.
    fn noise_floor_radial(&self, a: f64, b: f64) -> f64 {
        let (q, c) = self.bound();
        let h2 = self.h * self.h;
        let g = |rho: f64| (rho * rho + h2).powf(1.0 - 0.5 * q);
        let tail = if b.is_infinite() { 0.0 } else { g(b) };
        ROUNDOFF * 2.0 * PI * c * (g(a) - tail) / (q - 2.0)
    }

    /// Contribution per unit area element at (ρ, φ), without the ρ Jacobian.
    #[inline]
    fn density(&self, rho: f64, phi: f64) -> Result<f64> {
        let sep = rhat_on_axis(rho, self.h)?;
        let rhat = sep.rhat(phi);
        let chi = annulus_frame_tensor(self.pol, phi);
        let inv_rp = sep.r.powi(-self.kernel.power);
        let k = kernel_bracket(&self.alpha, &chi, rhat, self.kernel);
        let v = match self.observable {
            Observable::Energy | Observable::Torque => k * inv_rp,
            Observable::Force => {
                let drhat = (-Vec3::Z - rhat * (self.h / sep.r)) * (1.0 / sep.r);
                let dk = kernel_bracket_variation(&self.alpha, &chi, rhat, drhat, self.kernel);
                let p = self.kernel.power as f64;
                -(dk - p * k * self.h / (sep.r * sep.r)) * inv_rp
            }
        };
        Ok(self.kernel.prefactor * v)
    }

    /// ∫₀^{2π} dφ density(ρ, φ).
    fn azimuthal(&self, rho: f64, settings: &QuadratureSettings) -> Result<QuadResult> {
        let settings = &settings.with_abs_floor(self.noise_floor(rho));
        let mut failure = None;
        let r = integrate_periodic_with_magnitude(
            |phi| match self.density(rho, phi) {
                Ok(v) => (v, v.abs()),
                Err(e) => {
                    failure.get_or_insert(e);
                    (f64::NAN, f64::NAN)
                }
            },
            settings,
        );
        match failure {
            Some(e) => Err(e),
            None => r,
        }
    }
}

/// Ring of radius `a` with line polarizability σ = `ring`.
pub fn ring_quadrature(
    observable: Observable,
    atom: &AtomPolarizability,
    ring: &AnnularPolarizability,
    a: f64,
    h: f64,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    Geometry::Ring { a, h }.validate()?;
    let integrand = Integrand::new(observable, atom, ring, h, kernel);
    let r = integrand.azimuthal(a, settings)?;
    Ok(QuadResult {
        value: a * r.value,
        error: a * r.error,
        magnitude: a * r.magnitude,
        evaluations: r.evaluations,
    })
}

pub fn ring_energy_quadrature(
    atom: &AtomPolarizability,
    ring: &AnnularPolarizability,
    a: f64,
    h: f64,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    ring_quadrature(Observable::Energy, atom, ring, a, h, kernel, settings)
}

/// Annular disc a < ρ < b with surface polarizability λ = `disc`.
/// `b = f64::INFINITY` gives the apertured plate.
#[allow(clippy::too_many_arguments)]
pub fn disc_quadrature(
    observable: Observable,
    atom: &AtomPolarizability,
    disc: &AnnularPolarizability,
    a: f64,
    b: f64,
    h: f64,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    if b.is_infinite() && b > 0.0 {
        Geometry::AperturedPlate { a, h }.validate()?;
    } else {
        Geometry::AnnularDisc { a, b, h }.validate()?;
    }
    let integrand = Integrand::new(observable, atom, disc, h, kernel);
    let outer = settings.with_abs_floor(integrand.noise_floor_radial(a, b));
    let mut failure = None;
    let radial = |rho: f64| match integrand.azimuthal(rho, settings) {
        Ok(r) => (rho * r.value, rho * r.magnitude),
        Err(e) => {
            failure.get_or_insert(e);
            (f64::NAN, f64::NAN)
        }
    };
    let r = if b.is_infinite() {
        integrate_to_infinity_with_magnitude(radial, a, &outer)
    } else {
        integrate_with_magnitude(radial, a, b, &outer)
    };
    match failure {
        Some(e) => Err(e),
        None => r,
    }
}

#[allow(clippy::too_many_arguments)]
pub fn disc_energy_quadrature(
    atom: &AtomPolarizability,
    disc: &AnnularPolarizability,
    a: f64,
    b: f64,
    h: f64,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    disc_quadrature(Observable::Energy, atom, disc, a, b, h, kernel, settings)
}

pub fn plate_energy_quadrature(
    atom: &AtomPolarizability,
    plate: &AnnularPolarizability,
    a: f64,
    h: f64,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    disc_quadrature(
        Observable::Energy,
        atom,
        plate,
        a,
        f64::INFINITY,
        h,
        kernel,
        settings,
    )
}

/// Dispatch on [`Geometry`].
pub fn geometry_quadrature(
    observable: Observable,
    atom: &AtomPolarizability,
    pol: &AnnularPolarizability,
    geometry: &Geometry,
    kernel: &DyadicKernel,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    match *geometry {
        Geometry::Ring { a, h } => ring_quadrature(observable, atom, pol, a, h, kernel, settings),
        Geometry::AnnularDisc { a, b, h } => {
            disc_quadrature(observable, atom, pol, a, b, h, kernel, settings)
        }
        Geometry::AperturedPlate { a, h } => {
            disc_quadrature(observable, atom, pol, a, f64::INFINITY, h, kernel, settings)
        }
    }
}

/// Retarded interaction of two isotropic atoms, −(23/4π) α₁α₂ / r⁷.
///
/// The second atom enters the kernel as the point susceptibility 4πα₂, so
/// the bracket (13·3 − 56 + 63 = 46) times 4π/(32π²) gives 23/(4π).
pub fn atom_atom_cp(alpha1: f64, alpha2: f64, r: f64) -> Result<f64> {
    point_pair(alpha1, alpha2, r, &DyadicKernel::casimir_polder())
}

/// Non-retarded two-atom integrand per unit ∫_{−∞}^{∞} dζ:
/// −(3/2π) α₁α₂ / r⁶, i.e. London's −(3/π) ∫₀^∞ dζ α₁α₂ / r⁶.
pub fn atom_atom_london_density(alpha1: f64, alpha2: f64, r: f64) -> Result<f64> {
    point_pair(alpha1, alpha2, r, &DyadicKernel::london())
}

fn point_pair(alpha1: f64, alpha2: f64, r: f64, kernel: &DyadicKernel) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "atom separation must be positive, got {r}"
        )));
    }
    let a = SymTensor3::IDENTITY * alpha1;
    let chi = SymTensor3::IDENTITY * (4.0 * PI * alpha2);
    Ok(kernel.prefactor * kernel_bracket(&a, &chi, Vec3::Z, kernel) * r.powi(-kernel.power))
}
