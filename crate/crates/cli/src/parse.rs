// SPDX-License-Identifier: Apache-2.0

//! Angle, grid and list parsing for command-line values.

use anyhow::{bail, Context, Result};

/// Angle in radians from `30`, `30deg` or `0.52rad`. Bare numbers are degrees.
pub fn angle(s: &str) -> Result<f64> {
    let s = s.trim();
    let (num, rad) = if let Some(v) = s.strip_suffix("rad") {
        (v, true)
    } else if let Some(v) = s.strip_suffix("deg") {
        (v, false)
    } else {
        (s, false)
    };
    let v: f64 = num
        .trim()
        .parse()
        .with_context(|| format!("not an angle: {s:?}"))?;
    if !v.is_finite() {
        bail!("angle must be finite, got {s:?}");
    }
    Ok(if rad { v } else { v.to_radians() })
}

pub fn number(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .with_context(|| format!("not a number: {s:?}"))?;
    if !v.is_finite() {
        bail!("value must be finite, got {s:?}");
    }
    Ok(v)
}

/// `start:stop:count` (count ≥ 2, endpoints included) or a comma list.
pub fn grid(s: &str, item: fn(&str) -> Result<f64>) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.len() {
        1 => s.split(',').map(item).collect(),
        3 => {
            let (lo, hi) = (item(parts[0])?, item(parts[1])?);
            let n: usize = parts[2]
                .trim()
                .parse()
                .with_context(|| format!("grid count must be an integer in {s:?}"))?;
            if n < 2 {
                bail!("grid {s:?} needs at least two points");
            }
            let step = (hi - lo) / (n - 1) as f64;
            Ok((0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect())
        }
        _ => bail!("grid must be start:stop:count or a comma list, got {s:?}"),
    }
}

/// Comma list of exactly `n` numbers.
pub fn fixed_list(s: &str, n: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = s.split(',').map(number).collect::<Result<_>>()?;
    if v.len() != n {
        bail!("expected {n} comma-separated values, got {s:?}");
    }
    Ok(v)
}
