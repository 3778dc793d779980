// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the evaluators and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("separation vanishes: atom coincides with the dielectric element")]
    ZeroSeparation,

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {estimate:e}, error bound {error:e})"
    )]
    QuadratureNoConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("no closed form for {0}; use the quadrature oracle instead")]
    NoClosedForm(String),

    #[error("finite-difference step underflow at x = {x:e}")]
    StepUnderflow { x: f64 },

    #[error("root is not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error(
        "energy family is not of the form A(h) + B(h) cos 2θ at h/a = {u} (residual {residual:e})"
    )]
    NotCos2Form { u: f64, residual: f64 },

    #[error("no threshold in window [{lo}, {hi}]")]
    NoThreshold { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNoConvergence { .. }
                | Error::StepUnderflow { .. }
                | Error::NotBracketed { .. }
                | Error::NotCos2Form { .. }
                | Error::NoThreshold { .. }
        )
    }
}
