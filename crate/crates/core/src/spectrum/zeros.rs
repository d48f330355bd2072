use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::specfun::{hardy_z, riemann_zeta, SpecFunConfig};
use crate::{Error, Result};

/// Sampling step for sign changes of `Z(t)`; below the smallest zero gap
/// for `t ≤ 100`.
pub const DEFAULT_GRID_STEP: f64 = 0.05;
/// Largest supported ordinate.
pub const MAX_ORDINATE: f64 = 100.0;
/// Bisection stops once the bracket is narrower than this.
const BRACKET_WIDTH: f64 = 1e-9;

/// A zero `1/2 + it` of ζ on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    pub index: usize,
    pub t: f64,
    /// `|ζ(1/2 + it)|` at the returned `t`.
    pub residual: f64,
    pub bracket: (f64, f64),
}

impl ZetaZero {
    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5, self.t)
    }
}

fn bisect(mut lo: f64, mut hi: f64, mut z_lo: f64, cfg: &SpecFunConfig) -> Result<(f64, f64)> {
    while hi - lo >= BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = hardy_z(mid, cfg)?;
        if z_mid == 0.0 {
            return Ok((mid, mid));
        }
        if (z_mid < 0.0) == (z_lo < 0.0) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Zeros of ζ on the critical line with `t_min ≤ t ≤ t_max`, found from
/// sign changes of the Hardy Z function on a grid of the given step.
pub fn find_critical_zeros_with_step(
    t_min: f64,
    t_max: f64,
    step: f64,
    cfg: &SpecFunConfig,
) -> Result<Vec<ZetaZero>> {
    if !(t_min >= 0.0) || !(t_max <= MAX_ORDINATE) || !(t_min < t_max) {
        return Err(Error::Domain(format!(
            "zero search needs 0 <= t_min < t_max <= {MAX_ORDINATE}, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::Domain(format!("grid step {step} must be positive")));
    }
    let cells = ((t_max - t_min) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=cells)
        .map(|i| (t_min + i as f64 * step).min(t_max))
        .collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| hardy_z(t, cfg))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for i in 0..grid.len() - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            // Exact grid hit; record it once.
            if i == 0 || values[i - 1] != 0.0 {
                brackets.push((grid[i], grid[i], a));
            }
        } else if a * b < 0.0 {
            brackets.push((grid[i], grid[i + 1], a));
        }
    }
    if values[grid.len() - 1] == 0.0 && values.len() > 1 && values[grid.len() - 2] != 0.0 {
        let t = grid[grid.len() - 1];
        brackets.push((t, t, 0.0));
    }

    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&(lo, hi, z_lo)| if lo == hi { Ok((lo, hi)) } else { bisect(lo, hi, z_lo, cfg) })
        .collect::<Result<_>>()?;

    refined
        .into_iter()
        .enumerate()
        .map(|(k, (lo, hi))| {
            let t = 0.5 * (lo + hi);
            let residual = riemann_zeta(Complex64::new(0.5, t), cfg)?.norm();
            Ok(ZetaZero {
                index: k + 1,
                t,
                residual,
                bracket: (lo, hi),
            })
        })
        .collect()
}

/// [`find_critical_zeros_with_step`] with the default 0.05 grid.
pub fn find_critical_zeros(t_min: f64, t_max: f64, cfg: &SpecFunConfig) -> Result<Vec<ZetaZero>> {
    find_critical_zeros_with_step(t_min, t_max, DEFAULT_GRID_STEP, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_zero_below_ten() {
        let cfg = SpecFunConfig::default();
        assert!(find_critical_zeros(0.0, 10.0, &cfg).unwrap().is_empty());
        // |ζ| stays away from zero on a fine grid
        for i in 0..=1000 {
            let t = i as f64 * 0.01;
            assert!(riemann_zeta(Complex64::new(0.5, t), &cfg).unwrap().norm() > 0.1);
        }
    }

    #[test]
    fn first_zeros() {
        let cfg = SpecFunConfig::default();
        let z = find_critical_zeros(10.0, 15.0, &cfg).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0].t - 14.134_725_141_734_693).abs() < 1e-9);
        assert!(z[0].residual < 1e-8);
        assert!(z[0].bracket.1 - z[0].bracket.0 < 1e-9);
        let z = find_critical_zeros(10.0, 24.0, &cfg).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[1].t - 21.022_039_638_771_555).abs() < 1e-9);
        assert_eq!((z[0].index, z[1].index), (1, 2));
        // the third zero, 25.0109, sits just below 26
        let z = find_critical_zeros(10.0, 26.0, &cfg).unwrap();
        assert_eq!(z.len(), 3);
        assert!((z[2].t - 25.010_857_580_145_688).abs() < 1e-9);
        for (lo, hi, n) in [(10.0, 24.0, 2usize), (10.0, 26.0, 3)] {
            let same_sign = hardy_z(lo, &cfg).unwrap() * hardy_z(hi, &cfg).unwrap() > 0.0;
            assert_eq!(same_sign, n % 2 == 0);
        }
    }

    #[test]
    fn bad_ranges() {
        let cfg = SpecFunConfig::default();
        assert!(find_critical_zeros(5.0, 5.0, &cfg).is_err());
        assert!(find_critical_zeros(-1.0, 5.0, &cfg).is_err());
        assert!(find_critical_zeros(0.0, 101.0, &cfg).is_err());
    }
}
