// SPDX-License-Identifier: Apache-2.0

//! Ridders' extrapolated central differences.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// Extrapolation error estimate.
    pub error: f64,
}

const SHRINK: f64 = 1.4;
const SHRINK2: f64 = SHRINK * SHRINK;
const TABLE: usize = 12;
const SAFE: f64 = 2.0;
const MIN_ROWS: usize = 8;

/// f'(x) by a Neville tableau of central differences with steps
/// `step`, `step / 1.4`, `step / 1.96`, ….
pub fn ridders<F: FnMut(f64) -> f64>(mut f: F, x: f64, step: f64) -> Result<Derivative> {
    if !(step > 0.0) || !x.is_finite() || x + step == x {
        return Err(Error::StepUnderflow { x });
    }
    let mut a = [[0.0f64; TABLE]; TABLE];
    let mut hh = step;
    a[0][0] = (f(x + hh) - f(x - hh)) / (2.0 * hh);
    let mut best = Derivative {
        value: a[0][0],
        error: f64::INFINITY,
    };
    for i in 1..TABLE {
        hh /= SHRINK;
        if x + hh == x {
            break;
        }
        a[0][i] = (f(x + hh) - f(x - hh)) / (2.0 * hh);
        let mut fac = SHRINK2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK2;
            let err = (a[j][i] - a[j - 1][i])
                .abs()
                .max((a[j][i] - a[j - 1][i - 1]).abs());
            if err <= best.error {
                best = Derivative {
                    value: a[j][i],
                    error: err,
                };
            }
        }
        // Stop once higher orders diverge, but only after the step has
        // shrunk far enough that truncation error no longer dominates.
        if i >= MIN_ROWS && (a[i][i] - a[i - 1][i - 1]).abs() >= SAFE * best.error {
            break;
        }
    }
    if !best.value.is_finite() {
        return Err(Error::StepUnderflow { x });
    }
    Ok(best)
}
