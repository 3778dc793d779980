// SPDX-License-Identifier: Apache-2.0

//! Bracketing root finders and a golden-section maximiser.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket [lo, hi].
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NotBracketed { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Ok(b)
}

/// Boundary of a boolean predicate with `pred(lo) != pred(hi)`, by bisection
/// until the bracket is narrower than `tol`. Returns the bracket midpoint.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(mut pred: P, lo: f64, hi: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let pa = pred(a);
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if pred(m) == pa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Fallible variant of [`bisect_predicate`].
pub fn try_bisect_predicate<P: FnMut(f64) -> Result<bool>>(
    mut pred: P,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let pa = pred(a)?;
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if pred(m)? == pa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for a local maximum of `f` on [lo, hi].
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (b - a).abs() > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Positive real roots x of q₂x² + q₁x + q₀ = 0, ascending.
pub fn positive_quadratic_roots(q2: f64, q1: f64, q0: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if q2 == 0.0 {
        if q1 != 0.0 {
            out.push(-q0 / q1);
        }
    } else {
        let disc = q1 * q1 - 4.0 * q2 * q0;
        if disc >= 0.0 {
            // Numerically stable pair.
            let t = -0.5 * (q1 + q1.signum() * disc.sqrt());
            if t != 0.0 {
                out.push(t / q2);
                out.push(q0 / t);
            } else {
                out.push(0.0);
            }
        }
    }
    out.retain(|x| *x > 0.0 && x.is_finite());
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_sqrt2() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_reports_missing_bracket() {
        assert_eq!(
            brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NotBracketed { lo: -1.0, hi: 1.0 })
        );
    }

    #[test]
    fn brent_handles_flat_then_steep() {
        let r = brent(|x| (x - 0.3).powi(3), -1.0, 5.0, 1e-13).unwrap();
        assert!((r - 0.3).abs() < 1e-4);
    }

    #[test]
    fn predicate_bisection() {
        let b = bisect_predicate(|x| x > 0.123_456, 0.0, 1.0, 1e-9);
        assert!((b - 0.123_456).abs() < 1e-9);
    }

    #[test]
    fn golden_finds_peak() {
        let (x, fx) = golden_max(|x| -(x - 1.7).powi(2) + 3.0, 0.0, 4.0, 1e-10);
        assert!((x - 1.7).abs() < 1e-6);
        assert!((fx - 3.0).abs() < 1e-14);
    }

    #[test]
    fn quadratic_roots() {
        assert_eq!(positive_quadratic_roots(1.0, -3.0, 2.0), vec![1.0, 2.0]);
        assert!(positive_quadratic_roots(1.0, 0.0, 1.0).is_empty());
        let r = positive_quadratic_roots(2.0, 74.0, -33.0);
        assert_eq!(r.len(), 1);
        assert!((2.0 * r[0] * r[0] + 74.0 * r[0] - 33.0).abs() < 1e-12);
    }
}
