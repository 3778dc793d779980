// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss–Kronrod (7/15) quadrature on finite and semi-infinite
//! intervals, and a doubling trapezoid rule for periodic integrands.
//!
//! Every routine also integrates the magnitude |f| alongside f. Convergence
//! is judged against that magnitude, so integrals that cancel to zero
//! terminate instead of chasing a relative tolerance on a vanishing result.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::pairwise_sum;
use crate::error::{Error, Result};

/// Tolerances for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Panel budget for Gauss–Kronrod; the periodic rule may use up to
    /// `16 * max_subdivisions` nodes.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Raises the absolute tolerance to at least `floor`.
    pub fn with_abs_floor(mut self, floor: f64) -> Self {
        if floor.is_finite() {
            self.abs_tol = self.abs_tol.max(floor);
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be positive".into(),
            ));
        }
        Ok(())
    }

    fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

/// Integral estimate with its error bound and the integral of |f|.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub magnitude: f64,
    pub evaluations: usize,
}

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    magnitude: f64,
    error: f64,
}

/// One G7/K15 panel. The integrand returns (f, |f|-like magnitude density).
fn gk15<F: FnMut(f64) -> (f64, f64)>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let (fc, mc) = f(centre);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut mag = WGK[7] * mc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, m1) = f(centre - dx);
        let (f2, m2) = f(centre + dx);
        kron += WGK[j] * (f1 + f2);
        mag += WGK[j] * (m1 + m2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kron * half;
    let magnitude = mag * half.abs();
    let roundoff = 50.0 * f64::EPSILON * magnitude;
    let error = ((kron - gauss) * half).abs().max(roundoff);
    Panel {
        lo,
        hi,
        value,
        magnitude,
        error,
    }
}

/// Adaptive integration of a real function over [lo, hi].
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    integrate_with_magnitude(
        |x| {
            let v = f(x);
            (v, v.abs())
        },
        lo,
        hi,
        settings,
    )
}

/// Adaptive integration where the integrand supplies its own magnitude
/// density (for nested integrals, the inner ∫|f|).
pub fn integrate_with_magnitude<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    lo: f64,
    hi: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    settings.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "finite integration bounds required, got [{lo}, {hi}]"
        )));
    }
    if lo == hi {
        return Ok(QuadResult::default());
    }

    let mut panels = vec![gk15(&mut f, lo, hi)];
    let mut evaluations = 15;
    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let magnitude: f64 = panels.iter().map(|p| p.magnitude).sum();
        if !error.is_finite() || !magnitude.is_finite() {
            return Err(no_convergence(&panels));
        }
        if error <= settings.target(magnitude) {
            break;
        }
        if panels.len() >= settings.max_subdivisions {
            return Err(no_convergence(&panels));
        }
        // Split the panel with the largest error; ties go to the leftmost.
        let (worst, _) =
            panels
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |(bi, be), (i, p)| {
                    if p.error > be {
                        (i, p.error)
                    } else {
                        (bi, be)
                    }
                });
        let p = panels[worst];
        let mid = 0.5 * (p.lo + p.hi);
        if mid <= p.lo.min(p.hi) || mid >= p.lo.max(p.hi) {
            return Err(no_convergence(&panels));
        }
        panels[worst] = gk15(&mut f, p.lo, mid);
        panels.push(gk15(&mut f, mid, p.hi));
        evaluations += 30;
    }

    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    let mags: Vec<f64> = panels.iter().map(|p| p.magnitude).collect();
    let errs: Vec<f64> = panels.iter().map(|p| p.error).collect();
    Ok(QuadResult {
        value: pairwise_sum(&values),
        error: pairwise_sum(&errs),
        magnitude: pairwise_sum(&mags),
        evaluations,
    })
}

fn no_convergence(panels: &[Panel]) -> Error {
    Error::QuadratureNoConvergence {
        estimate: panels.iter().map(|p| p.value).sum(),
        error: panels.iter().map(|p| p.error).sum(),
        subdivisions: panels.len(),
    }
}

/// ∫_lo^∞ f(x) dx via x = lo / t, for lo > 0 and f decaying faster than 1/x.
pub fn integrate_to_infinity_with_magnitude<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    lo: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    if !(lo > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "semi-infinite integration needs a positive lower bound, got {lo}"
        )));
    }
    integrate_with_magnitude(
        |t| {
            let x = lo / t;
            let jac = lo / (t * t);
            let (v, m) = f(x);
            (v * jac, m * jac)
        },
        0.0,
        1.0,
        settings,
    )
}

/// ∫_0^{2π} f(φ) dφ for a smooth 2π-periodic integrand, by the equally
/// weighted trapezoid rule with node doubling until two successive
/// estimates agree.
pub fn integrate_periodic<F: FnMut(f64) -> f64>(
    mut f: F,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    integrate_periodic_with_magnitude(
        |x| {
            let v = f(x);
            (v, v.abs())
        },
        settings,
    )
}

pub fn integrate_periodic_with_magnitude<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    settings.validate()?;
    let max_nodes = 16 * settings.max_subdivisions.max(1);
    let mut n = 8usize;
    let mut samples: Vec<(f64, f64)> = (0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect();
    let (mut prev, _) = trapezoid(&samples);
    loop {
        let n2 = 2 * n;
        if n2 > max_nodes {
            let (value, _) = trapezoid(&samples);
            return Err(Error::QuadratureNoConvergence {
                estimate: value,
                error: (value - prev).abs(),
                subdivisions: n,
            });
        }
        let mut refined = Vec::with_capacity(n2);
        for (k, s) in samples.iter().enumerate() {
            refined.push(*s);
            refined.push(f(2.0 * PI * (2 * k + 1) as f64 / n2 as f64));
        }
        samples = refined;
        n = n2;
        let (value, magnitude) = trapezoid(&samples);
        let error = (value - prev).abs();
        if error <= settings.target(magnitude) {
            return Ok(QuadResult {
                value,
                error,
                magnitude,
                evaluations: n,
            });
        }
        prev = value;
    }
}

fn trapezoid(samples: &[(f64, f64)]) -> (f64, f64) {
    let w = 2.0 * PI / samples.len() as f64;
    let vs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ms: Vec<f64> = samples.iter().map(|s| s.1).collect();
    (w * pairwise_sum(&vs), w * pairwise_sum(&ms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let s = QuadratureSettings::default();
        let r = integrate(|x| 3.0 * x * x - 2.0 * x + 1.0, -1.0, 2.0, &s).unwrap();
        assert!((r.value - 9.0).abs() < 1e-14);
    }

    #[test]
    fn peaked_integrand_converges() {
        let s = QuadratureSettings::default();
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, &s).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!((r.value - exact).abs() / exact < 1e-11, "{r:?}");
    }

    #[test]
    fn semi_infinite_power_law() {
        let s = QuadratureSettings::default();
        let r = integrate_to_infinity_with_magnitude(
            |x| {
                let v = x.powi(-6);
                (v, v)
            },
            2.0,
            &s,
        )
        .unwrap();
        let exact = 2f64.powi(-5) / 5.0;
        assert!((r.value - exact).abs() / exact < 1e-13);
    }

    #[test]
    fn periodic_trig_polynomial_is_exact_early() {
        let s = QuadratureSettings::default();
        let r = integrate_periodic(|p| (p.cos() + 0.3 * (2.0 * p).sin()).powi(2), &s).unwrap();
        assert!((r.value - PI * (1.0 + 0.09)).abs() < 1e-14);
        assert!(r.evaluations <= 16);
    }

    #[test]
    fn periodic_smooth_non_polynomial() {
        let s = QuadratureSettings::default();
        // ∫ 1/(2 + cos φ) = 2π/√3
        let r = integrate_periodic(|p| 1.0 / (2.0 + p.cos()), &s).unwrap();
        assert!((r.value - 2.0 * PI / 3f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn cancelling_integral_terminates() {
        let s = QuadratureSettings::default();
        let r = integrate(|x| x.sin(), -3.0, 3.0, &s).unwrap();
        assert!(r.value.abs() < 1e-14);
        assert!(r.magnitude > 1.0);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let s = QuadratureSettings {
            max_subdivisions: 3,
            ..Default::default()
        };
        let err = integrate(|x| x.abs().sqrt().recip(), -1.0, 1.0, &s).unwrap_err();
        assert!(matches!(err, Error::QuadratureNoConvergence { .. }));
    }

    #[test]
    fn settings_bounds() {
        assert!(QuadratureSettings::default().validate().is_ok());
        assert!(QuadratureSettings::default()
            .with_rel_tol(1e-2)
            .validate()
            .is_err());
        assert!(QuadratureSettings::default()
            .with_rel_tol(0.0)
            .validate()
            .is_err());
    }
}
