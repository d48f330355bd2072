use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{riemann_zeta, SpecFunConfig};
use crate::sum::frac_power;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub f0: Complex64,
    pub f_minus_half: Complex64,
    /// `|(-1/2)^[-s] - (2 - 2^s) ζ(s)|`.
    pub identity_defect: f64,
}

/// Boundary values of `x^[-s]` at `0` and `-1/2`.
pub fn boundary_report(s: Complex64, cfg: &SpecFunConfig) -> Result<BoundaryReport> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("boundary identity undefined at s = 1".into()));
    }
    let f0 = frac_power(0.0, s, cfg)?;
    let f_minus_half = frac_power(-0.5, s, cfg)?;
    let two_pow_s = (s * 2f64.ln()).exp();
    let closed = (2.0 - two_pow_s) * riemann_zeta(s, cfg)?;
    Ok(BoundaryReport {
        f0,
        f_minus_half,
        identity_defect: (f_minus_half - closed).norm(),
    })
}
