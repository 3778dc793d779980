// SPDX-License-Identifier: Apache-2.0

//! Torsion-free heights, repulsion intervals, critical angles and the
//! narrow-annulus threshold.
//!
//! All routines work in reduced units: the inner radius is 1, the atom is
//! uniaxial along ê₁ with α₁ = 1 and the dielectric density is 1. Heights
//! are therefore u = h/a and only signs and zeros matter.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    disc_energy_closed, force_numeric, ring_e1_cos2, ring_force_closed, AtomAxis, DiscMode,
    RingComponent,
};
use crate::error::{Error, Result};
use crate::numerics::roots::{brent, golden_max, positive_quadratic_roots, try_bisect_predicate};

/// Default upper end of the height scan.
pub const DEFAULT_U_MAX: f64 = 20.0;
/// Linear samples in a height scan.
pub const SCAN_POINTS: usize = 2000;
const ROOT_TOL: f64 = 1e-12;
const EDGE_TOL: f64 = 1e-12;

/// Configuration whose energy is a quadratic form in cos2θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Ring {
        comp: RingComponent,
    },
    /// σ_ρ = σ_φ.
    RingInPlaneIsotropic,
    Disc {
        mode: DiscMode,
        b: f64,
    },
    Plate {
        mode: DiscMode,
    },
}

impl Family {
    pub fn ring(comp: RingComponent) -> Self {
        Family::Ring { comp }
    }

    /// Energy in natural units for a = α₁ = density = 1.
    pub fn energy(&self, u: f64, theta: f64) -> Result<f64> {
        let c = (2.0 * theta).cos();
        match *self {
            Family::Ring { comp } => {
                let (p, q) = ring_e1_cos2(comp, u);
                Ok(p + q * c)
            }
            Family::RingInPlaneIsotropic => {
                let (p1, q1) = ring_e1_cos2(RingComponent::Tangential, u);
                let (p2, q2) = ring_e1_cos2(RingComponent::Radial, u);
                Ok(p1 + p2 + (q1 + q2) * c)
            }
            Family::Disc { mode, b } => disc_energy_closed(mode, 1.0, b, u, theta),
            Family::Plate { mode } => disc_energy_closed(mode, 1.0, f64::INFINITY, u, theta),
        }
    }

    /// F = −∂E/∂u. Printed polynomials where they exist, Ridders otherwise.
    pub fn force(&self, u: f64, theta: f64) -> Result<f64> {
        match *self {
            Family::Ring {
                comp: comp @ (RingComponent::Radial | RingComponent::Axial),
            } => ring_force_closed(AtomAxis::E1, comp, 1.0, 1.0, 1.0, u, theta),
            Family::Ring {
                comp: RingComponent::Tangential,
            } => Ok(tangential_e1_force(u, theta)),
            Family::RingInPlaneIsotropic => Ok(tangential_e1_force(u, theta)
                + ring_force_closed(AtomAxis::E1, RingComponent::Radial, 1.0, 1.0, 1.0, u, theta)?),
            _ => {
                let mut failure = None;
                let f = force_numeric(
                    |h| match self.energy(h, theta) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NAN
                        }
                    },
                    u,
                    1.0,
                )?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok(f),
                }
            }
        }
    }

    /// Height window that contains every torsion-free root.
    pub fn default_window(&self) -> f64 {
        match *self {
            Family::Disc { b, .. } => DEFAULT_U_MAX.max(4.0 * b),
            _ => DEFAULT_U_MAX,
        }
    }

    pub fn cos2_split(&self, u: f64) -> Result<Cos2Split> {
        Cos2Split::from_energy(|t| self.energy(u, t), u)
    }

    pub fn validate(&self) -> Result<()> {
        if let Family::Disc { b, .. } = *self {
            if !(b > 1.0) {
                return Err(Error::InvalidGeometry(format!(
                    "disc outer radius must exceed 1 (units of a), got {b}"
                )));
            }
        }
        Ok(())
    }
}

fn tangential_e1_force(u: f64, theta: f64) -> f64 {
    // E = −13 sin²θ / (32π s^{7/2}).
    let s = 1.0 + u * u;
    -91.0 * theta.sin().powi(2) * u / (32.0 * PI * s.powi(4) * s.sqrt())
}

/// E(θ) = A + B cos2θ at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cos2Split {
    pub a: f64,
    pub b: f64,
    /// |E(θ) − A − B cos2θ| at two probe angles, relative to |A| + |B|.
    pub residual: f64,
}

impl Cos2Split {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn from_energy<F: FnMut(f64) -> Result<f64>>(mut energy: F, u: f64) -> Result<Self> {
        let e0 = energy(0.0)?;
        let e90 = energy(FRAC_PI_2)?;
        let a = 0.5 * (e0 + e90);
        let b = 0.5 * (e0 - e90);
        let scale = a.abs() + b.abs();
        let mut residual: f64 = 0.0;
        for t in [FRAC_PI_4, 0.3] {
            let r = (energy(t)? - a - b * (2.0 * t).cos()).abs();
            residual = residual.max(if scale > 0.0 { r / scale } else { r });
        }
        if residual > Self::TOLERANCE {
            return Err(Error::NotCos2Form { u, residual });
        }
        Ok(Cos2Split { a, b, residual })
    }

    pub fn at(&self, theta: f64) -> f64 {
        self.a + self.b * (2.0 * theta).cos()
    }
}

/// Heights u ∈ (0, u_max] where the cos2θ coefficient of the energy
/// changes sign, i.e. the energy is orientation independent.
pub fn torsion_free_heights(family: &Family, u_max: f64) -> Result<Vec<f64>> {
    family.validate()?;
    check_window(u_max)?;
    let coef = |u: f64| -> Result<f64> {
        match *family {
            Family::Ring { comp } => Ok(ring_e1_cos2(comp, u).1),
            _ => Ok(family.cos2_split(u)?.b),
        }
    };
    // The cos2θ form itself is checked on a coarse subgrid.
    for k in 0..=20 {
        family.cos2_split(u_max * k as f64 / 20.0)?;
    }
    sign_change_roots(coef, u_max)
}

fn sign_change_roots<F: Fn(f64) -> Result<f64>>(f: F, u_max: f64) -> Result<Vec<f64>> {
    let grid: Vec<f64> = (1..=SCAN_POINTS)
        .map(|k| u_max * k as f64 / SCAN_POINTS as f64)
        .collect();
    let values = grid.iter().map(|&u| f(u)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for k in 1..grid.len() {
        let (f0, f1) = (values[k - 1], values[k]);
        if f0 == 0.0 {
            roots.push(grid[k - 1]);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let mut failure = None;
            let r = brent(
                |u| match f(u) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                grid[k - 1],
                grid[k],
                ROOT_TOL,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            roots.push(r);
        }
    }
    if values.last() == Some(&0.0) {
        roots.push(u_max);
    }
    Ok(roots)
}

/// Cases where the torsion-free condition is a quadratic in x = u².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticCase {
    RingRadial,
    RingAxial,
    RingInPlaneIsotropic,
    PlateIsotropic,
    PlateRadial,
    PlateAxial,
}

impl AnalyticCase {
    pub const ALL: [AnalyticCase; 6] = [
        AnalyticCase::RingRadial,
        AnalyticCase::RingAxial,
        AnalyticCase::RingInPlaneIsotropic,
        AnalyticCase::PlateIsotropic,
        AnalyticCase::PlateRadial,
        AnalyticCase::PlateAxial,
    ];

    /// (q₂, q₁, q₀) of q₂x² + q₁x + q₀, proportional to the cos2θ coefficient.
    pub fn quadratic(self) -> (f64, f64, f64) {
        match self {
            AnalyticCase::RingRadial => (13.0, -156.0, 20.0),
            AnalyticCase::RingAxial => (40.0, -123.0, 26.0),
            AnalyticCase::RingInPlaneIsotropic => (26.0, -130.0, 33.0),
            AnalyticCase::PlateIsotropic => (-2.0, -74.0, 33.0),
            AnalyticCase::PlateRadial => (-3.0, -20.0, 4.0),
            AnalyticCase::PlateAxial => (6.0, -73.0, 26.0),
        }
    }

    pub fn family(self) -> Family {
        match self {
            AnalyticCase::RingRadial => Family::ring(RingComponent::Radial),
            AnalyticCase::RingAxial => Family::ring(RingComponent::Axial),
            AnalyticCase::RingInPlaneIsotropic => Family::RingInPlaneIsotropic,
            AnalyticCase::PlateIsotropic => Family::Plate {
                mode: DiscMode::Isotropic,
            },
            AnalyticCase::PlateRadial => Family::Plate {
                mode: DiscMode::Radial,
            },
            AnalyticCase::PlateAxial => Family::Plate {
                mode: DiscMode::Axial,
            },
        }
    }
}

/// Exact torsion-free heights u = √x, ascending.
pub fn torsion_free_analytic(case: AnalyticCase) -> Vec<f64> {
    let (q2, q1, q0) = case.quadratic();
    positive_quadratic_roots(q2, q1, q0)
        .into_iter()
        .map(f64::sqrt)
        .collect()
}

/// Heights (lo, hi) with F > 0. `lo = 0` marks an interval that reaches
/// down to the plane; `hi = u_max` one that is still open at the window end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Repulsive height intervals of `force` on (0, u_max].
///
/// The scan combines a logarithmic grid below u = 0.01 with SCAN_POINTS
/// linear samples. Every local maximum of the sampled force that is still
/// negative is refined by golden section, so intervals thinner than the
/// grid spacing are not missed.
pub fn repulsion_intervals<F: Fn(f64) -> Result<f64>>(
    force: F,
    u_max: f64,
) -> Result<Vec<Interval>> {
    check_window(u_max)?;
    let mut grid: Vec<f64> = (0..40)
        .map(|k| 10f64.powf(-8.0 + 6.0 * k as f64 / 40.0))
        .collect();
    grid.extend((1..=SCAN_POINTS).map(|k| u_max * k as f64 / SCAN_POINTS as f64));
    grid.retain(|&u| u <= u_max);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let values = grid.iter().map(|&u| force(u)).collect::<Result<Vec<_>>>()?;
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "force is not finite at u = {}",
            grid[k]
        )));
    }

    // Points (u, F) with hidden positive maxima spliced in.
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(grid.len() + 8);
    for k in 0..grid.len() {
        pts.push((grid[k], values[k]));
        if k + 2 < grid.len() {
            let (f0, f1, f2) = (values[k], values[k + 1], values[k + 2]);
            if f1 <= 0.0 && f1 >= f0 && f1 >= f2 && (f0 < f1 || f1 > f2) {
                let mut failure = None;
                let (um, fm) = golden_max(
                    |u| match force(u) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NEG_INFINITY
                        }
                    },
                    grid[k],
                    grid[k + 2],
                    1e-13 * grid[k + 2].max(1.0),
                );
                if let Some(e) = failure {
                    return Err(e);
                }
                if fm > 0.0 {
                    pts.push((um, fm));
                }
            }
        }
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));

    let edge = |lo: f64, hi: f64| -> Result<f64> {
        let mut failure = None;
        let r = brent(
            |u| match force(u) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            hi,
            EDGE_TOL,
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(r),
        }
    };

    let mut out = Vec::new();
    let mut open: Option<f64> = if pts[0].1 > 0.0 { Some(0.0) } else { None };
    for w in pts.windows(2) {
        let ((u0, f0), (u1, f1)) = (w[0], w[1]);
        match open {
            None if f1 > 0.0 => {
                open = Some(if f0 == 0.0 { u0 } else { edge(u0, u1)? });
            }
            Some(lo) if f1 <= 0.0 => {
                let hi = if f1 == 0.0 { u1 } else { edge(u0, u1)? };
                out.push(Interval { lo, hi });
                open = None;
            }
            _ => {}
        }
        let _ = f0;
    }
    if let Some(lo) = open {
        out.push(Interval { lo, hi: u_max });
    }
    Ok(out)
}

/// Repulsive intervals for an analysis family at fixed orientation.
pub fn family_intervals(family: &Family, theta: f64, u_max: f64) -> Result<Vec<Interval>> {
    family.validate()?;
    repulsion_intervals(|u| family.force(u, theta), u_max)
}

/// Orientations in [0, π] where the set of repulsive heights switches
/// between empty and non-empty, in radians.
///
/// The θ axis is sampled every 0.25° and each change refined by bisection
/// to `tol` radians.
pub fn critical_angles(family: &Family, u_max: f64, tol: f64) -> Result<Vec<f64>> {
    family.validate()?;
    let n = 720;
    let thetas: Vec<f64> = (0..=n).map(|k| PI * k as f64 / n as f64).collect();
    let pred = |t: f64| -> Result<bool> { Ok(!family_intervals(family, t, u_max)?.is_empty()) };
    let flags = thetas
        .par_iter()
        .map(|&t| pred(t))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for k in 1..thetas.len() {
        if flags[k] != flags[k - 1] {
            out.push(try_bisect_predicate(pred, thetas[k - 1], thetas[k], tol)?);
        }
    }
    Ok(out)
}

/// True when the radial-disc force has a repulsive interval separated from
/// the plane (lower edge above zero).
pub fn has_intermediate_repulsion(b: f64, theta: f64, u_max: f64) -> Result<bool> {
    let fam = Family::Disc {
        mode: DiscMode::Radial,
        b,
    };
    Ok(family_intervals(&fam, theta, u_max)?
        .iter()
        .any(|i| i.lo > 0.0))
}

/// Result of the outer-radius bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    /// b*/a.
    pub b: f64,
    /// Whether the intermediate interval exists on the narrow side b < b*.
    pub present_below: bool,
}

/// Outer radius b*/a of a radial annular disc at which the intermediate
/// repulsive interval appears or disappears, searched on (1.001, 2].
pub fn second_region_threshold(theta: f64, tol: f64) -> Result<Threshold> {
    let (lo, hi) = (1.001, 2.0);
    let u_max = DEFAULT_U_MAX;
    let pred = |b: f64| has_intermediate_repulsion(b, theta, u_max);
    let (p_lo, p_hi) = (pred(lo)?, pred(hi)?);
    if p_lo == p_hi {
        return Err(Error::NoThreshold { lo, hi });
    }
    let b = try_bisect_predicate(pred, lo, hi, tol)?;
    Ok(Threshold {
        b,
        present_below: p_lo,
    })
}

/// Zeros x = u² of the printed e1 ring force brackets at fixed θ, as u.
/// Radial: 91(1−c)x² + (812+1456c)x + (28−532c); axial:
/// 40(1+c)x² − (19+181c)x + (40+76c), with c = cos2θ.
pub fn ring_force_zeros(comp: RingComponent, theta: f64) -> Result<Vec<f64>> {
    let c = (2.0 * theta).cos();
    let (q2, q1, q0) = match comp {
        RingComponent::Radial => (91.0 * (1.0 - c), 812.0 + 1456.0 * c, 28.0 - 532.0 * c),
        RingComponent::Axial => (40.0 * (1.0 + c), -(19.0 + 181.0 * c), 40.0 + 76.0 * c),
        RingComponent::Tangential => {
            return Err(Error::NoClosedForm(
                "the tangential ring force has no zeros above the plane".into(),
            ))
        }
    };
    Ok(positive_quadratic_roots(q2, q1, q0)
        .into_iter()
        .map(f64::sqrt)
        .collect())
}

/// Boolean repulsion mask on a (θ, u) grid with the interpolated edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepulsionMap {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    /// `mask[i][j]` is F(u[j], θ[i]) > 0.
    pub mask: Vec<Vec<bool>>,
    /// Points (u, θ) on the edge of the repulsive set, refined along u for
    /// each θ row and along θ for each u column.
    pub boundary: Vec<[f64; 2]>,
}

impl RepulsionMap {
    pub fn repulsive_count(&self) -> usize {
        self.mask.iter().flatten().filter(|&&m| m).count()
    }
}

pub fn repulsion_map(family: &Family, u_grid: &[f64], theta_grid: &[f64]) -> Result<RepulsionMap> {
    family.validate()?;
    check_monotone(u_grid, "height")?;
    check_monotone(theta_grid, "angle")?;
    let rows = theta_grid
        .par_iter()
        .map(|&t| {
            u_grid
                .iter()
                .map(|&u| family.force(u, t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mask: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| r.iter().map(|&f| f > 0.0).collect())
        .collect();

    let mut boundary = Vec::new();
    for (i, &t) in theta_grid.iter().enumerate() {
        for j in 1..u_grid.len() {
            if mask[i][j] != mask[i][j - 1] {
                let u = brent(
                    |u| family.force(u, t).unwrap_or(f64::NAN),
                    u_grid[j - 1],
                    u_grid[j],
                    EDGE_TOL,
                )
                .unwrap_or(0.5 * (u_grid[j - 1] + u_grid[j]));
                boundary.push([u, t]);
            }
        }
    }
    for (j, &u) in u_grid.iter().enumerate() {
        for i in 1..theta_grid.len() {
            if mask[i][j] != mask[i - 1][j] {
                let t = brent(
                    |t| family.force(u, t).unwrap_or(f64::NAN),
                    theta_grid[i - 1],
                    theta_grid[i],
                    EDGE_TOL,
                )
                .unwrap_or(0.5 * (theta_grid[i - 1] + theta_grid[i]));
                boundary.push([u, t]);
            }
        }
    }
    boundary.sort_by(|a, b| a[1].total_cmp(&b[1]).then(a[0].total_cmp(&b[0])));
    Ok(RepulsionMap {
        u: u_grid.to_vec(),
        theta: theta_grid.to_vec(),
        mask,
        boundary,
    })
}

fn check_window(u_max: f64) -> Result<()> {
    if u_max > 0.0 && u_max.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "scan window must be positive, got {u_max}"
        )))
    }
}

fn check_monotone(xs: &[f64], what: &str) -> Result<()> {
    if xs.len() < 2 || xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(format!(
            "{what} grid must be strictly increasing with at least two points"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn ring_radial_roots_match_radicals() {
        let r = torsion_free_heights(&Family::ring(RingComponent::Radial), 20.0).unwrap();
        let s = 8.0 * 91f64.sqrt();
        let exact = [((78.0 - s) / 13.0).sqrt(), ((78.0 + s) / 13.0).sqrt()];
        assert_eq!(r.len(), 2);
        for (x, y) in r.iter().zip(exact) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn numeric_roots_match_quadratics() {
        for case in AnalyticCase::ALL {
            let num = torsion_free_heights(&case.family(), 20.0).unwrap();
            let exact = torsion_free_analytic(case);
            assert_eq!(num.len(), exact.len(), "{case:?}");
            for (x, y) in num.iter().zip(&exact) {
                assert!((x - y).abs() < 1e-10, "{case:?}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn split_rejects_non_cos2_energy() {
        let r = Cos2Split::from_energy(|t| Ok(t.cos()), 0.5);
        assert!(matches!(r, Err(Error::NotCos2Form { .. })));
    }

    #[test]
    fn axial_ring_perpendicular_interval() {
        let iv = family_intervals(&Family::ring(RingComponent::Axial), FRAC_PI_2, 20.0).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].lo, 0.0);
        assert!((iv[0].hi - (2.0f64 / 9.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn radial_ring_intervals_follow_force_zeros() {
        let fam = Family::ring(RingComponent::Radial);
        let iv = family_intervals(&fam, 0.0, 20.0).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].lo, 0.0);
        let z = ring_force_zeros(RingComponent::Radial, 0.0).unwrap();
        assert!((iv[0].hi - z[0]).abs() < 1e-10);
        assert!(family_intervals(&fam, deg(60.0), 20.0).unwrap().is_empty());
        let band = family_intervals(&fam, FRAC_PI_2, 20.0).unwrap();
        assert_eq!(band.len(), 1);
        assert!((band[0].lo - 1.538_461_538_461_538_5f64.sqrt()).abs() < 1e-9);
        assert!((band[0].hi - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn tangential_ring_never_repels() {
        let fam = Family::ring(RingComponent::Tangential);
        for t in [0.0, 0.4, 1.0, FRAC_PI_2] {
            assert!(family_intervals(&fam, t, 20.0).unwrap().is_empty());
        }
    }

    #[test]
    fn interval_edges_are_force_zeros() {
        let fam = Family::Plate {
            mode: DiscMode::Axial,
        };
        let t = deg(80.0);
        let iv = family_intervals(&fam, t, 20.0).unwrap();
        assert!(!iv.is_empty());
        for i in iv {
            if i.lo > 0.0 {
                assert!(fam.force(i.lo, t).unwrap().abs() < 1e-12);
            }
            if i.hi < 20.0 {
                assert!(fam.force(i.hi, t).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn map_agrees_with_intervals() {
        let fam = Family::ring(RingComponent::Radial);
        let u: Vec<f64> = (1..=40).map(|k| 0.05 * k as f64).collect();
        let th: Vec<f64> = (0..=18).map(|k| deg(5.0 * k as f64)).collect();
        let map = repulsion_map(&fam, &u, &th).unwrap();
        for (i, &t) in th.iter().enumerate() {
            let iv = family_intervals(&fam, t, 20.0).unwrap();
            for (j, &x) in u.iter().enumerate() {
                let inside = iv.iter().any(|i| x > i.lo && x < i.hi);
                assert_eq!(inside, map.mask[i][j], "θ={t} u={x}");
            }
        }
        assert!(!map.boundary.is_empty());
        let tangential = repulsion_map(&Family::ring(RingComponent::Tangential), &u, &th).unwrap();
        assert_eq!(tangential.repulsive_count(), 0);
        assert!(tangential.boundary.is_empty());
    }

    #[test]
    fn map_rejects_unsorted_grid() {
        let fam = Family::ring(RingComponent::Radial);
        assert!(repulsion_map(&fam, &[0.5, 0.2], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn disc_family_validates_outer_radius() {
        let fam = Family::Disc {
            mode: DiscMode::Radial,
            b: 0.9,
        };
        assert!(torsion_free_heights(&fam, 20.0).is_err());
    }
}
