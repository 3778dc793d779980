// SPDX-License-Identifier: Apache-2.0

//! Casimir-Polder interaction of an anisotropic atom on the axis of a ring,
//! annular disc or apertured plate in the dilute-dielectric limit.
//!
//! [`closed_forms`] holds the exact polynomials, [`kernels`] the direct
//! quadrature used to check them, and [`analysis`] the root and region
//! searches built on top. [`machine`] and [`electrostatics`] cover the
//! orientation-driven cycle and the permanent-dipole analog.

// NaN must fail validation, hence the negated comparisons; the Kronrod
// tables are kept at the precision they are published with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod closed_forms;
pub mod electrostatics;
pub mod error;
pub mod kernels;
pub mod machine;
pub mod numerics;
pub mod tensors;
pub mod units;
pub mod verification;

pub use error::{Error, Result};
pub use kernels::{DyadicKernel, Observable, QuadratureSettings};
pub use numerics::quadrature::QuadResult;
pub use tensors::{AnnularPolarizability, AtomPolarizability, Geometry, SymTensor3, Vec3};
