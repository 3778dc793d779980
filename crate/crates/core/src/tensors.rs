// SPDX-License-Identifier: Apache-2.0

//! Frames and symmetric 3×3 polarizability tensors.
//!
//! The atom's principal axes are parametrised by a polar angle `theta` of
//! ê₁ from the symmetry axis ẑ, an azimuth `phi_s` of ê₁, and a rotation
//! `beta` of (ê₂, ê₃) about ê₁. The annulus tensor is diagonal in the
//! cylindrical frame (ẑ, ρ̂, φ̂) of the point being integrated over.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartesian 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    /// Radial unit vector ρ̂(φ) = cos φ î + sin φ ĵ.
    #[inline]
    pub fn radial(phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        Vec3::new(c, s, 0.0)
    }

    /// Tangential unit vector φ̂(φ) = −sin φ î + cos φ ĵ.
    #[inline]
    pub fn tangential(phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        Vec3::new(-s, c, 0.0)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// Symmetric 3×3 tensor stored by its six independent components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymTensor3 {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl SymTensor3 {
    pub const ZERO: SymTensor3 = SymTensor3 {
        xx: 0.0,
        yy: 0.0,
        zz: 0.0,
        xy: 0.0,
        xz: 0.0,
        yz: 0.0,
    };

    pub const IDENTITY: SymTensor3 = SymTensor3 {
        xx: 1.0,
        yy: 1.0,
        zz: 1.0,
        xy: 0.0,
        xz: 0.0,
        yz: 0.0,
    };

    /// The dyad v v.
    #[inline]
    pub fn dyad(v: Vec3) -> Self {
        SymTensor3 {
            xx: v.x * v.x,
            yy: v.y * v.y,
            zz: v.z * v.z,
            xy: v.x * v.y,
            xz: v.x * v.z,
            yz: v.y * v.z,
        }
    }

    /// The symmetrised dyad u v + v u.
    #[inline]
    pub fn sym_dyad(u: Vec3, v: Vec3) -> Self {
        SymTensor3 {
            xx: 2.0 * u.x * v.x,
            yy: 2.0 * u.y * v.y,
            zz: 2.0 * u.z * v.z,
            xy: u.x * v.y + u.y * v.x,
            xz: u.x * v.z + u.z * v.x,
            yz: u.y * v.z + u.z * v.y,
        }
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }

    /// T · v
    #[inline]
    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(
            self.xx * v.x + self.xy * v.y + self.xz * v.z,
            self.xy * v.x + self.yy * v.y + self.yz * v.z,
            self.xz * v.x + self.yz * v.y + self.zz * v.z,
        )
    }

    /// u · T · v
    #[inline]
    pub fn bilinear(&self, u: Vec3, v: Vec3) -> f64 {
        u.dot(self.apply(v))
    }

    /// v · T · v
    #[inline]
    pub fn quadratic(&self, v: Vec3) -> f64 {
        self.bilinear(v, v)
    }

    /// tr(A · B) for two symmetric tensors.
    #[inline]
    pub fn contract(&self, o: &SymTensor3) -> f64 {
        self.xx * o.xx
            + self.yy * o.yy
            + self.zz * o.zz
            + 2.0 * (self.xy * o.xy + self.xz * o.xz + self.yz * o.yz)
    }

    pub fn scaled(&self, s: f64) -> Self {
        SymTensor3 {
            xx: self.xx * s,
            yy: self.yy * s,
            zz: self.zz * s,
            xy: self.xy * s,
            xz: self.xz * s,
            yz: self.yz * s,
        }
    }

    /// Row-major dense form.
    pub fn to_array(&self) -> [[f64; 3]; 3] {
        [
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ]
    }

    pub fn max_abs_diff(&self, o: &SymTensor3) -> f64 {
        [
            self.xx - o.xx,
            self.yy - o.yy,
            self.zz - o.zz,
            self.xy - o.xy,
            self.xz - o.xz,
            self.yz - o.yz,
        ]
        .iter()
        .fold(0.0_f64, |m, d| m.max(d.abs()))
    }
}

impl Add for SymTensor3 {
    type Output = SymTensor3;
    fn add(mut self, o: SymTensor3) -> SymTensor3 {
        self += o;
        self
    }
}

impl AddAssign for SymTensor3 {
    fn add_assign(&mut self, o: SymTensor3) {
        self.xx += o.xx;
        self.yy += o.yy;
        self.zz += o.zz;
        self.xy += o.xy;
        self.xz += o.xz;
        self.yz += o.yz;
    }
}

impl Mul<f64> for SymTensor3 {
    type Output = SymTensor3;
    fn mul(self, s: f64) -> SymTensor3 {
        self.scaled(s)
    }
}

/// Principal axes (ê₁, ê₂, ê₃) of the atom.
///
/// ê₁ = r̂ₛ and ê₂ = cos β φ̂ₛ + sin β θ̂ₛ as usual; ê₃ is taken as
/// ê₁ × ê₂ = sin β φ̂ₛ − cos β θ̂ₛ so the triad is right-handed. Only the
/// dyad ê₃ê₃ enters any energy, so the sign of ê₃ is immaterial there.
pub fn eigenbasis(theta: f64, beta: f64, phi_s: f64) -> (Vec3, Vec3, Vec3) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi_s.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let r_s = Vec3::new(st * cp, st * sp, ct);
    let theta_s = Vec3::new(ct * cp, ct * sp, -st);
    let phi_s_hat = Vec3::new(-sp, cp, 0.0);
    let e1 = r_s;
    let e2 = phi_s_hat * cb + theta_s * sb;
    let e3 = phi_s_hat * sb - theta_s * cb;
    (e1, e2, e3)
}

/// Derivatives of the principal axes with respect to `theta`.
pub fn eigenbasis_dtheta(theta: f64, beta: f64, phi_s: f64) -> (Vec3, Vec3, Vec3) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi_s.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let r_s = Vec3::new(st * cp, st * sp, ct);
    let theta_s = Vec3::new(ct * cp, ct * sp, -st);
    // dr̂ₛ/dθ = θ̂ₛ, dθ̂ₛ/dθ = −r̂ₛ, dφ̂ₛ/dθ = 0
    (theta_s, -r_s * sb, r_s * cb)
}

/// Diagonal atomic polarizability with an arbitrary orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomPolarizability {
    /// Principal polarizabilities (α₁, α₂, α₃), length³.
    pub alpha: [f64; 3],
    /// Polar angle of ê₁ from ẑ, radians.
    pub theta: f64,
    /// Rotation about ê₁, radians.
    pub beta: f64,
    /// Azimuth of ê₁, radians.
    pub phi_s: f64,
}

impl AtomPolarizability {
    pub fn new(alpha: [f64; 3], theta: f64, beta: f64, phi_s: f64) -> Self {
        AtomPolarizability {
            alpha,
            theta,
            beta,
            phi_s,
        }
    }

    /// α₁ ê₁ê₁ only.
    pub fn uniaxial(alpha1: f64, theta: f64) -> Self {
        Self::new([alpha1, 0.0, 0.0], theta, 0.0, 0.0)
    }

    pub fn isotropic(alpha: f64) -> Self {
        Self::new([alpha; 3], 0.0, 0.0, 0.0)
    }

    /// Single principal axis `axis` (0-based) with unit polarizability.
    pub fn single_axis(axis: usize, theta: f64, beta: f64, phi_s: f64) -> Self {
        let mut alpha = [0.0; 3];
        alpha[axis] = 1.0;
        Self::new(alpha, theta, beta, phi_s)
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn basis(&self) -> (Vec3, Vec3, Vec3) {
        eigenbasis(self.theta, self.beta, self.phi_s)
    }

    /// α = Σᵢ αᵢ êᵢêᵢ.
    pub fn tensor(&self) -> SymTensor3 {
        let (e1, e2, e3) = self.basis();
        SymTensor3::dyad(e1) * self.alpha[0]
            + SymTensor3::dyad(e2) * self.alpha[1]
            + SymTensor3::dyad(e3) * self.alpha[2]
    }

    /// ∂α/∂θ, used by the torque oracle.
    pub fn tensor_dtheta(&self) -> SymTensor3 {
        let (e1, e2, e3) = self.basis();
        let (d1, d2, d3) = eigenbasis_dtheta(self.theta, self.beta, self.phi_s);
        SymTensor3::sym_dyad(e1, d1) * self.alpha[0]
            + SymTensor3::sym_dyad(e2, d2) * self.alpha[1]
            + SymTensor3::sym_dyad(e3, d3) * self.alpha[2]
    }

    /// True when only α₁ is nonzero.
    pub fn is_uniaxial_e1(&self) -> bool {
        self.alpha[1] == 0.0 && self.alpha[2] == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.alpha.iter().all(|a| a.is_finite())
            && self.theta.is_finite()
            && self.beta.is_finite()
            && self.phi_s.is_finite();
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "atom polarizability and angles must be finite".into(),
            ))
        }
    }
}

/// Annulus polarizability, diagonal in the cylindrical frame.
///
/// For a ring these are line densities σ (length²); for a disc or plate
/// surface densities λ (length).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AnnularPolarizability {
    pub comp_z: f64,
    pub comp_rho: f64,
    pub comp_phi: f64,
}

impl AnnularPolarizability {
    pub fn new(comp_z: f64, comp_rho: f64, comp_phi: f64) -> Self {
        AnnularPolarizability {
            comp_z,
            comp_rho,
            comp_phi,
        }
    }

    pub fn axial(v: f64) -> Self {
        Self::new(v, 0.0, 0.0)
    }

    pub fn radial(v: f64) -> Self {
        Self::new(0.0, v, 0.0)
    }

    pub fn tangential(v: f64) -> Self {
        Self::new(0.0, 0.0, v)
    }

    /// Isotropic in the plane: v (ρ̂ρ̂ + φ̂φ̂).
    pub fn in_plane_isotropic(v: f64) -> Self {
        Self::new(0.0, v, v)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.comp_z * s, self.comp_rho * s, self.comp_phi * s)
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.comp_z
            .abs()
            .max(self.comp_rho.abs())
            .max(self.comp_phi.abs())
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.comp_z, self.comp_rho, self.comp_phi];
        if !all.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidParameter(
                "annulus polarizability components must be finite".into(),
            ));
        }
        if all.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter(
                "annulus polarizability is identically zero".into(),
            ));
        }
        Ok(())
    }
}

/// comp_z ẑẑ + comp_ρ ρ̂ρ̂ + comp_φ φ̂φ̂ at azimuth `phi`.
pub fn annulus_frame_tensor(pol: &AnnularPolarizability, phi: f64) -> SymTensor3 {
    SymTensor3::dyad(Vec3::Z) * pol.comp_z
        + SymTensor3::dyad(Vec3::radial(phi)) * pol.comp_rho
        + SymTensor3::dyad(Vec3::tangential(phi)) * pol.comp_phi
}

/// Separation from an atom at hẑ to the point ρρ̂(φ) in the plane z = 0.
///
/// The vector r = ρρ̂ − hẑ has the same length for every φ; only its
/// direction rotates with the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnAxisSeparation {
    pub r: f64,
    /// Coefficient of ρ̂ in r̂.
    pub radial: f64,
    /// Coefficient of ẑ in r̂.
    pub axial: f64,
}

impl OnAxisSeparation {
    /// r̂ evaluated in the frame at azimuth `phi`.
    #[inline]
    pub fn rhat(&self, phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        Vec3::new(self.radial * c, self.radial * s, self.axial)
    }
}

pub fn rhat_on_axis(rho: f64, h: f64) -> Result<OnAxisSeparation> {
    if !(rho >= 0.0) || !h.is_finite() || !rho.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rho must be finite and non-negative, h finite (rho = {rho}, h = {h})"
        )));
    }
    let r = rho.hypot(h);
    if r == 0.0 {
        return Err(Error::ZeroSeparation);
    }
    Ok(OnAxisSeparation {
        r,
        radial: rho / r,
        axial: -h / r,
    })
}

/// Configuration of the annular dielectric. Lengths share one unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Ring { a: f64, h: f64 },
    AnnularDisc { a: f64, b: f64, h: f64 },
    AperturedPlate { a: f64, h: f64 },
}

impl Geometry {
    pub fn inner_radius(&self) -> f64 {
        match *self {
            Geometry::Ring { a, .. }
            | Geometry::AnnularDisc { a, .. }
            | Geometry::AperturedPlate { a, .. } => a,
        }
    }

    pub fn height(&self) -> f64 {
        match *self {
            Geometry::Ring { h, .. }
            | Geometry::AnnularDisc { h, .. }
            | Geometry::AperturedPlate { h, .. } => h,
        }
    }

    pub fn with_height(self, h: f64) -> Self {
        match self {
            Geometry::Ring { a, .. } => Geometry::Ring { a, h },
            Geometry::AnnularDisc { a, b, .. } => Geometry::AnnularDisc { a, b, h },
            Geometry::AperturedPlate { a, .. } => Geometry::AperturedPlate { a, h },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.inner_radius();
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidGeometry(format!(
                "inner radius must be positive and finite, got {a}"
            )));
        }
        if !self.height().is_finite() {
            return Err(Error::InvalidGeometry("height must be finite".into()));
        }
        if let Geometry::AnnularDisc { b, .. } = *self {
            if !(b > a) {
                return Err(Error::InvalidGeometry(format!(
                    "outer radius must exceed inner radius (a = {a}, b = {b})"
                )));
            }
        }
        Ok(())
    }
}
