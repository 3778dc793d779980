// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the criterion benches.

use annulus_cp::{AnnularPolarizability, AtomPolarizability};

/// Heights h/a used by the sweep benches.
pub fn heights(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 5.0 * k as f64 / (n - 1).max(1) as f64)
        .collect()
}

/// A fully anisotropic atom tilted off the axis.
pub fn generic_atom() -> AtomPolarizability {
    AtomPolarizability::new([1.0, 0.6, 0.3], 0.7, 0.4, 0.0)
}

pub fn generic_annulus() -> AnnularPolarizability {
    AnnularPolarizability::new(0.4, 1.0, 0.3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let h = heights(11);
        assert_eq!(h[0], 0.0);
        assert_eq!(h[10], 5.0);
        assert!(generic_atom().validate().is_ok());
        assert!(generic_annulus().validate().is_ok());
    }
}
