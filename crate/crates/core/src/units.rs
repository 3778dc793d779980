// SPDX-License-Identifier: Apache-2.0

//! Conversion from natural units (ħ = c = 1) to electronvolts.

/// ħc in eV·nm.
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;

/// Energy in eV for a natural-unit value computed with all lengths in nm.
pub fn natural_to_ev(value: f64) -> f64 {
    value * HBAR_C_EV_NM
}

/// Force in eV/nm, same convention.
pub fn natural_force_to_ev_per_nm(value: f64) -> f64 {
    value * HBAR_C_EV_NM
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale() {
        assert_eq!(natural_to_ev(1.0), 197.326_980_4);
        assert_eq!(natural_to_ev(0.0), 0.0);
    }
}
