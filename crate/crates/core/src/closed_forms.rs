// SPDX-License-Identifier: Apache-2.0

//! Exact polynomial expressions for the ring, annular disc and apertured
//! plate, plus numeric derivatives for the cases with no printed force.
//!
//! Everything is evaluated in the scaled height u = h/a with s = 1 + u².
//! Energies come back in natural units (ħc = 1) for the supplied a.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::diff::ridders;
use crate::tensors::{AnnularPolarizability, AtomPolarizability};

/// Component of the ring or disc polarizability in the cylindrical frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingComponent {
    /// σ_φ φ̂φ̂
    Tangential,
    /// σ_ρ ρ̂ρ̂
    Radial,
    /// σ_z ẑẑ
    Axial,
}

impl RingComponent {
    pub const ALL: [RingComponent; 3] = [
        RingComponent::Tangential,
        RingComponent::Radial,
        RingComponent::Axial,
    ];

    pub fn of(self, pol: &AnnularPolarizability) -> f64 {
        match self {
            RingComponent::Tangential => pol.comp_phi,
            RingComponent::Radial => pol.comp_rho,
            RingComponent::Axial => pol.comp_z,
        }
    }

    pub fn unit(self) -> AnnularPolarizability {
        match self {
            RingComponent::Tangential => AnnularPolarizability::tangential(1.0),
            RingComponent::Radial => AnnularPolarizability::radial(1.0),
            RingComponent::Axial => AnnularPolarizability::axial(1.0),
        }
    }
}

/// Atom eigen-axis ê₁, ê₂ or ê₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomAxis {
    E1,
    E2,
    E3,
}

impl AtomAxis {
    pub const ALL: [AtomAxis; 3] = [AtomAxis::E1, AtomAxis::E2, AtomAxis::E3];

    pub fn index(self) -> usize {
        match self {
            AtomAxis::E1 => 0,
            AtomAxis::E2 => 1,
            AtomAxis::E3 => 2,
        }
    }
}

#[inline]
fn s_pow(s: f64, half_powers: i32) -> f64 {
    // s^{n/2} for odd n without exp/log.
    let whole = s.powi(half_powers / 2);
    if half_powers % 2 == 0 {
        whole
    } else if half_powers > 0 {
        whole * s.sqrt()
    } else {
        whole / s.sqrt()
    }
}

/// Ring energy for one atom axis and one ring component, in units of
/// ħc αᵢ σ_c / a⁶.
pub fn ring_term(axis: AtomAxis, comp: RingComponent, u: f64, theta: f64, beta: f64) -> f64 {
    let x = u * u;
    let s = 1.0 + x;
    let (st, ct) = theta.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (st2, ct2, sb2, cb2) = (st * st, ct * ct, sb * sb, cb * cb);
    let c = (2.0 * theta).cos();
    let bracket = match (comp, axis) {
        (RingComponent::Tangential, AtomAxis::E1) => 13.0 * st2 * s * s,
        (RingComponent::Tangential, AtomAxis::E2) => 13.0 * (cb2 + ct2 * sb2) * s * s,
        (RingComponent::Tangential, AtomAxis::E3) => 13.0 * (sb2 + ct2 * cb2) * s * s,
        (RingComponent::Radial, AtomAxis::E1) => {
            0.5 * ((20.0 + 96.0 * x + 13.0 * x * x) - (20.0 - 156.0 * x + 13.0 * x * x) * c)
        }
        (RingComponent::Radial, AtomAxis::E2) => {
            126.0 * x * sb2 * st2 + radial_p(x) * (cb2 + sb2 * ct2)
        }
        (RingComponent::Radial, AtomAxis::E3) => {
            126.0 * x * cb2 * st2 + radial_p(x) * (sb2 + cb2 * ct2)
        }
        (RingComponent::Axial, AtomAxis::E1) => {
            0.5 * ((26.0 + 3.0 * x + 40.0 * x * x) + (26.0 - 123.0 * x + 40.0 * x * x) * c)
        }
        (RingComponent::Axial, AtomAxis::E2) => {
            63.0 * x * (cb2 + sb2 * ct2) + axial_q(x) * sb2 * st2
        }
        (RingComponent::Axial, AtomAxis::E3) => {
            63.0 * x * (sb2 + cb2 * ct2) + axial_q(x) * cb2 * st2
        }
    };
    -bracket / (32.0 * PI * s_pow(s, 11))
}

fn radial_p(x: f64) -> f64 {
    20.0 - 30.0 * x + 13.0 * x * x
}

fn axial_q(x: f64) -> f64 {
    26.0 - 60.0 * x + 40.0 * x * x
}

/// Full ring energy: the nine axis/component terms weighted by αᵢ σ_c.
pub fn ring_energy_closed(
    atom: &AtomPolarizability,
    ring: &AnnularPolarizability,
    a: f64,
    h: f64,
) -> Result<f64> {
    check_radius(a)?;
    let u = h / a;
    let mut total = 0.0;
    for axis in AtomAxis::ALL {
        let alpha = atom.alpha[axis.index()];
        if alpha == 0.0 {
            continue;
        }
        for comp in RingComponent::ALL {
            let sigma = comp.of(ring);
            if sigma != 0.0 {
                total += alpha * sigma * ring_term(axis, comp, u, atom.theta, atom.beta);
            }
        }
    }
    Ok(total / a.powi(6))
}

/// e1-atom ring energy written as P(u) + Q(u) cos2θ, in units of ħc α₁ σ / a⁶.
/// `None` for the in-plane isotropic combination is not needed: it is the
/// sum of the tangential and radial pairs.
pub fn ring_e1_cos2(comp: RingComponent, u: f64) -> (f64, f64) {
    let x = u * u;
    let s = 1.0 + x;
    let pref = -1.0 / (64.0 * PI * s_pow(s, 11));
    let (p, q) = match comp {
        RingComponent::Tangential => (13.0 * s * s, -13.0 * s * s),
        RingComponent::Radial => (
            20.0 + 96.0 * x + 13.0 * x * x,
            -(20.0 - 156.0 * x + 13.0 * x * x),
        ),
        RingComponent::Axial => (
            26.0 + 3.0 * x + 40.0 * x * x,
            26.0 - 123.0 * x + 40.0 * x * x,
        ),
    };
    (pref * p, pref * q)
}

/// e1 atom above a ring with σ_ρ = σ_φ = σ (in-plane isotropic), in units
/// of ħc α₁ σ / a⁶.
pub fn ring_e1_in_plane_isotropic(u: f64, theta: f64) -> f64 {
    let x = u * u;
    let c = (2.0 * theta).cos();
    -((33.0 + 122.0 * x + 26.0 * x * x) - (33.0 - 130.0 * x + 26.0 * x * x) * c)
        / (64.0 * PI * s_pow(1.0 + x, 11))
}

/// τ = −∂E/∂θ for an e1 atom above a ring, natural units.
pub fn ring_torque_closed(
    comp: RingComponent,
    alpha1: f64,
    sigma: f64,
    a: f64,
    h: f64,
    theta: f64,
) -> Result<f64> {
    check_radius(a)?;
    let (_, q) = ring_e1_cos2(comp, h / a);
    Ok(2.0 * q * (2.0 * theta).sin() * alpha1 * sigma / a.powi(6))
}

/// F = −∂E/∂h for an e1 atom, natural units, positive = away from the ring.
///
/// Only the radial and axial components have a printed polynomial; the
/// tangential force is available through [`ring_tangential_force`] and any
/// other configuration through [`force_numeric`].
pub fn ring_force_closed(
    axis: AtomAxis,
    comp: RingComponent,
    alpha: f64,
    sigma: f64,
    a: f64,
    h: f64,
    theta: f64,
) -> Result<f64> {
    check_radius(a)?;
    if axis != AtomAxis::E1 || comp == RingComponent::Tangential {
        return Err(Error::NoClosedForm(format!(
            "no force polynomial for {axis:?} atom and {comp:?} ring; use force_numeric"
        )));
    }
    let u = h / a;
    let x = u * u;
    let s = 1.0 + x;
    let c = (2.0 * theta).cos();
    let v = match comp {
        RingComponent::Radial => {
            u * ((28.0 + 812.0 * x + 91.0 * x * x) - (532.0 - 1456.0 * x + 91.0 * x * x) * c)
        }
        _ => 7.0 * u * ((40.0 - 19.0 * x + 40.0 * x * x) + (76.0 - 181.0 * x + 40.0 * x * x) * c),
    };
    Ok(-v / (64.0 * PI * s_pow(s, 13)) * alpha * sigma / a.powi(7))
}

/// Force from a tangential ring on an arbitrary atom, natural units.
/// The energy is −13 T/(32π a⁶ s^{7/2}) with T ≥ 0, so this is never
/// positive for h ≥ 0.
pub fn ring_tangential_force(
    atom: &AtomPolarizability,
    sigma_phi: f64,
    a: f64,
    h: f64,
) -> Result<f64> {
    check_radius(a)?;
    let u = h / a;
    let s = 1.0 + u * u;
    let t: f64 = AtomAxis::ALL
        .iter()
        .map(|&ax| {
            atom.alpha[ax.index()]
                * ring_term(ax, RingComponent::Tangential, 0.0, atom.theta, atom.beta)
        })
        .sum::<f64>()
        * (-32.0 * PI / 13.0);
    Ok(-91.0 * t * u / (32.0 * PI * s_pow(s, 9)) * sigma_phi / a.powi(7))
}

/// Disc/plate polarizability pattern with a printed closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscMode {
    /// λ_ρ = λ_φ = λ, λ_z = 0.
    Isotropic,
    /// λ_ρ only.
    Radial,
    /// λ_z only.
    Axial,
}

impl DiscMode {
    pub const ALL: [DiscMode; 3] = [DiscMode::Isotropic, DiscMode::Radial, DiscMode::Axial];

    pub fn polarizability(self, lambda: f64) -> AnnularPolarizability {
        match self {
            DiscMode::Isotropic => AnnularPolarizability::in_plane_isotropic(lambda),
            DiscMode::Radial => AnnularPolarizability::radial(lambda),
            DiscMode::Axial => AnnularPolarizability::axial(lambda),
        }
    }
}

/// Antiderivative in ρ of the e1-atom disc energy density, with ρ and h in
/// units of a; the disc energy is G(b) − G(a) in units of ħc α₁ λ / a⁵.
pub fn disc_primitive(mode: DiscMode, t: f64, u: f64, theta: f64) -> f64 {
    let (r2, h2) = (t * t, u * u);
    let (r4, h4) = (r2 * r2, h2 * h2);
    let c = (2.0 * theta).cos();
    let s = s_pow(r2 + h2, 9);
    match mode {
        DiscMode::Isotropic => {
            ((33.0 * r4 + 106.0 * h2 * r2 + 38.0 * h4)
                - (33.0 * r4 - 74.0 * h2 * r2 - 2.0 * h4) * c)
                / (320.0 * PI * s)
        }
        DiscMode::Radial => {
            ((4.0 * r4 + 16.0 * h2 * r2 + 5.0 * h4) - (4.0 * r4 - 20.0 * h2 * r2 - 3.0 * h4) * c)
                / (64.0 * PI * s)
        }
        DiscMode::Axial => {
            ((26.0 * r4 + 17.0 * h2 * r2 + 26.0 * h4) + (26.0 * r4 - 73.0 * h2 * r2 + 6.0 * h4) * c)
                / (320.0 * PI * s)
        }
    }
}

/// e1 atom above an annular disc a < ρ < b, in units of ħc α₁ λ.
pub fn disc_energy_closed(mode: DiscMode, a: f64, b: f64, h: f64, theta: f64) -> Result<f64> {
    check_radius(a)?;
    if !(b > a) {
        return Err(Error::InvalidGeometry(format!(
            "outer radius b = {b} must exceed inner radius a = {a}"
        )));
    }
    let u = h / a;
    let outer = if b.is_infinite() {
        0.0
    } else {
        disc_primitive(mode, b / a, u, theta)
    };
    Ok((outer - disc_primitive(mode, 1.0, u, theta)) / a.powi(5))
}

/// e1 atom above an infinite plate with a circular aperture of radius a.
pub fn plate_energy_closed(mode: DiscMode, a: f64, h: f64, theta: f64) -> Result<f64> {
    disc_energy_closed(mode, a, f64::INFINITY, h, theta)
}

/// Disc or plate (b = ∞) energy for an e1-only atom and general λ:
/// λ_φ·iso + (λ_ρ − λ_φ)·radial + λ_z·axial.
pub fn disc_energy_atom(
    atom: &AtomPolarizability,
    pol: &AnnularPolarizability,
    a: f64,
    b: f64,
    h: f64,
) -> Result<f64> {
    if !atom.is_uniaxial_e1() {
        return Err(Error::NoClosedForm(
            "disc and plate closed forms need α₂ = α₃ = 0; use disc_energy_quadrature".into(),
        ));
    }
    let t = atom.theta;
    let mut e = 0.0;
    for (mode, w) in [
        (DiscMode::Isotropic, pol.comp_phi),
        (DiscMode::Radial, pol.comp_rho - pol.comp_phi),
        (DiscMode::Axial, pol.comp_z),
    ] {
        if w != 0.0 {
            e += w * disc_energy_closed(mode, a, b, h, t)?;
        }
    }
    Ok(atom.alpha[0] * e)
}

/// Energy with the reduced scales used for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedEnergy {
    pub value: f64,
    /// E_r = ħc α₁ σ / (64π a⁶)
    pub scale_ring: f64,
    /// E_p = ħc α₁ λ / (64π a⁵)
    pub scale_plate: f64,
}

impl ReducedEnergy {
    pub fn new(value: f64, alpha1: f64, density: f64, a: f64) -> Self {
        ReducedEnergy {
            value,
            scale_ring: ring_scale(alpha1, density, a),
            scale_plate: plate_scale(alpha1, density, a),
        }
    }

    pub fn in_ring_units(&self) -> f64 {
        self.value / self.scale_ring
    }

    pub fn in_plate_units(&self) -> f64 {
        self.value / self.scale_plate
    }
}

pub fn ring_scale(alpha1: f64, sigma: f64, a: f64) -> f64 {
    alpha1 * sigma / (64.0 * PI * a.powi(6))
}

pub fn plate_scale(alpha1: f64, lambda: f64, a: f64) -> f64 {
    alpha1 * lambda / (64.0 * PI * a.powi(5))
}

/// Leading large-h behaviour of the e1 energies, in units of E_r (ring) or
/// E_p (plate).
pub fn far_field(plate: bool, comp: RingComponent, u: f64, theta: f64) -> Result<f64> {
    let c = (2.0 * theta).cos();
    match (plate, comp) {
        (false, RingComponent::Radial) => Ok(-13.0 * (1.0 - c) / u.powi(7)),
        (false, RingComponent::Axial) => Ok(-40.0 * (1.0 + c) / u.powi(7)),
        (true, RingComponent::Radial) => Ok(-(5.0 + 3.0 * c) / u.powi(5)),
        (true, RingComponent::Axial) => Ok(-(26.0 + 6.0 * c) / (5.0 * u.powi(5))),
        _ => Err(Error::NoClosedForm(format!(
            "no far-field form for {comp:?}"
        ))),
    }
}

/// F = −∂E/∂h by Ridders extrapolation. `length_scale` sets the initial
/// step (a tenth of it); pass the inner radius.
pub fn force_numeric<F: FnMut(f64) -> f64>(energy: F, h: f64, length_scale: f64) -> Result<f64> {
    Ok(-ridders(energy, h, 0.1 * length_scale)?.value)
}

/// τ = −∂E/∂θ by Ridders extrapolation.
pub fn torque_numeric<F: FnMut(f64) -> f64>(energy: F, theta: f64) -> Result<f64> {
    Ok(-ridders(energy, theta, 0.1)?.value)
}

fn check_radius(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!(
            "radius must be positive, got {a}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const TOL: f64 = 1e-13;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn tangential_vanishes_along_axis() {
        assert_eq!(
            ring_term(AtomAxis::E1, RingComponent::Tangential, 0.7, 0.0, 0.3),
            0.0
        );
    }

    #[test]
    fn radial_in_plane_is_minus_forty() {
        let e = ring_term(AtomAxis::E1, RingComponent::Radial, 0.0, FRAC_PI_2, 0.0);
        assert!(close(e * 2.0, -40.0 / (32.0 * PI), TOL));
    }

    #[test]
    fn axial_on_axis_is_minus_e0() {
        let e = ring_energy_closed(
            &AtomPolarizability::uniaxial(1.0, 0.0),
            &AnnularPolarizability::axial(1.0),
            1.0,
            0.0,
        )
        .unwrap();
        assert!(close(e, -13.0 / (16.0 * PI), TOL));
        assert!(close(e / ring_scale(1.0, 1.0, 1.0), -52.0, TOL));
    }

    #[test]
    fn quarter_turn_maps_e2_onto_e1() {
        for comp in RingComponent::ALL {
            for &u in &[0.0, 0.4, 1.7] {
                for &t in &[0.0, 0.3, 1.2, 2.0] {
                    let e2 = ring_term(AtomAxis::E2, comp, u, t - FRAC_PI_2, FRAC_PI_2);
                    let e1 = ring_term(AtomAxis::E1, comp, u, t, 0.0);
                    assert!((e1 - e2).abs() < 1e-15, "{comp:?} {u} {t}");
                }
            }
        }
    }

    #[test]
    fn e3_is_e2_shifted_in_beta() {
        for comp in RingComponent::ALL {
            for &b in &[0.0, 0.5, 1.4] {
                let e3 = ring_term(AtomAxis::E3, comp, 0.8, 0.6, b);
                let e2 = ring_term(AtomAxis::E2, comp, 0.8, 0.6, b + FRAC_PI_2);
                assert!((e3 - e2).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn in_plane_isotropic_is_tangential_plus_radial() {
        for &u in &[0.0, 0.5, 2.0] {
            for &t in &[0.0, 0.7, FRAC_PI_2] {
                let sum = ring_term(AtomAxis::E1, RingComponent::Tangential, u, t, 0.0)
                    + ring_term(AtomAxis::E1, RingComponent::Radial, u, t, 0.0);
                assert!(close(sum, ring_e1_in_plane_isotropic(u, t), 1e-14));
            }
        }
    }

    #[test]
    fn cos2_split_reproduces_terms() {
        for comp in RingComponent::ALL {
            let (p, q) = ring_e1_cos2(comp, 0.9);
            let t = 0.4;
            let e = ring_term(AtomAxis::E1, comp, 0.9, t, 0.0);
            assert!(close(p + q * (2.0 * t).cos(), e, 1e-14));
        }
    }

    #[test]
    fn force_is_minus_derivative_of_energy() {
        for comp in [RingComponent::Radial, RingComponent::Axial] {
            for &h in &[0.2, 0.7, 1.9] {
                for &t in &[0.0, 0.8, FRAC_PI_2] {
                    let e = |h: f64| {
                        ring_energy_closed(
                            &AtomPolarizability::uniaxial(1.0, t),
                            &comp.unit(),
                            1.0,
                            h,
                        )
                        .unwrap()
                    };
                    let fnum = force_numeric(e, h, 1.0).unwrap();
                    let f = ring_force_closed(AtomAxis::E1, comp, 1.0, 1.0, 1.0, h, t).unwrap();
                    assert!(close(f, fnum, 1e-9), "{comp:?} {h} {t}: {f} {fnum}");
                }
            }
        }
    }

    #[test]
    fn tangential_force_matches_derivative() {
        let atom = AtomPolarizability::new([1.0, 0.6, 0.3], 0.9, 0.4, 0.0);
        let pol = AnnularPolarizability::tangential(1.0);
        let e = |h: f64| ring_energy_closed(&atom, &pol, 1.3, h).unwrap();
        let f = ring_tangential_force(&atom, 1.0, 1.3, 0.6).unwrap();
        assert!(close(f, force_numeric(e, 0.6, 1.3).unwrap(), 1e-9));
        assert!(f < 0.0);
    }

    #[test]
    fn torque_matches_derivative() {
        for comp in RingComponent::ALL {
            let e = |t: f64| ring_term(AtomAxis::E1, comp, 0.6, t, 0.0);
            let tq = ring_torque_closed(comp, 1.0, 1.0, 1.0, 0.6, 0.5).unwrap();
            assert!(close(tq, torque_numeric(e, 0.5).unwrap(), 1e-9));
        }
    }

    #[test]
    fn unsupported_force_pair_is_reported() {
        let r = ring_force_closed(AtomAxis::E2, RingComponent::Radial, 1.0, 1.0, 1.0, 0.5, 0.0);
        assert!(matches!(r, Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn disc_needs_ordered_radii() {
        assert!(disc_energy_closed(DiscMode::Radial, 1.0, 1.0, 0.5, 0.0).is_err());
        assert!(disc_energy_closed(DiscMode::Radial, 1.0, 0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn plate_iso_vanishes_at_center_along_axis() {
        assert_eq!(
            plate_energy_closed(DiscMode::Isotropic, 1.0, 0.0, 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn wide_disc_approaches_plate() {
        for mode in DiscMode::ALL {
            let d = disc_energy_closed(mode, 1.0, 1e6, 0.8, 0.4).unwrap();
            let p = plate_energy_closed(mode, 1.0, 0.8, 0.4).unwrap();
            assert!(close(d, p, 1e-10));
        }
    }

    #[test]
    fn disc_combination_rejects_full_tensor() {
        let atom = AtomPolarizability::isotropic(1.0);
        let pol = AnnularPolarizability::radial(1.0);
        assert!(matches!(
            disc_energy_atom(&atom, &pol, 1.0, 2.0, 0.3),
            Err(Error::NoClosedForm(_))
        ));
    }

    #[test]
    fn energies_depend_on_cos2theta_only() {
        let t = 0.37;
        for mode in DiscMode::ALL {
            let e = |t| disc_energy_closed(mode, 1.0, 1.6, 0.4, t).unwrap();
            assert_eq!(e(t), e(-t));
            assert!(close(e(t), e(PI - t), 1e-14));
        }
    }

    #[test]
    fn far_field_rejects_tangential() {
        assert!(far_field(false, RingComponent::Tangential, 100.0, 0.0).is_err());
    }

    #[test]
    fn scaled_radius_consistency() {
        // Doubling every length scales the ring energy by 2⁻⁶.
        let atom = AtomPolarizability::new([1.0, 0.4, 0.2], 0.7, 0.3, 0.0);
        let pol = AnnularPolarizability::new(0.3, 1.0, 0.5);
        let e1 = ring_energy_closed(&atom, &pol, 1.0, 0.6).unwrap();
        let e2 = ring_energy_closed(&atom, &pol, 2.0, 1.2).unwrap();
        assert!(close(e1, 64.0 * e2, 1e-14));
        let d1 = disc_energy_closed(DiscMode::Axial, 1.0, 1.5, 0.6, 0.2).unwrap();
        let d2 = disc_energy_closed(DiscMode::Axial, 2.0, 3.0, 1.2, 0.2).unwrap();
        assert!(close(d1, 32.0 * d2, 1e-14));
    }
}
