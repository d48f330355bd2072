//! Complex special functions.
//!
//! Zeta values come from a single Euler–Maclaurin code path (no functional
//! equation), valid on the half plane `Re(s) > 1 - em_bernoulli_order`.
//! All powers of positive reals use `exp(-s ln a)` with the real logarithm.

mod bernoulli;
mod gamma;
mod hardy;
mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_over_factorial};
pub use gamma::{digamma, log_gamma};
pub use hardy::{hardy_z, riemann_siegel_theta};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with_error, riemann_zeta, riemann_zeta_with_error};

use crate::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// γ, the Euler–Mascheroni constant.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Euler–Maclaurin parameters for zeta evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    /// The tail is attached at `a + n` with `a + n ≥ em_terms`.
    pub em_terms: usize,
    /// Highest Bernoulli index `2M` in the tail correction.
    pub em_bernoulli_order: usize,
    /// Maximum accepted truncation remainder.
    pub target_abs_tol: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            em_terms: 50,
            em_bernoulli_order: 24,
            target_abs_tol: 1e-12,
        }
    }
}

impl SpecFunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.em_terms < 10 {
            return Err(Error::Domain(format!("em_terms = {} < 10", self.em_terms)));
        }
        if self.em_bernoulli_order < 2 || !self.em_bernoulli_order.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "em_bernoulli_order = {} must be even and >= 2",
                self.em_bernoulli_order
            )));
        }
        if self.em_bernoulli_order > bernoulli::MAX_INDEX - 2 {
            return Err(Error::Domain(format!(
                "em_bernoulli_order = {} exceeds the Bernoulli table",
                self.em_bernoulli_order
            )));
        }
        if !(self.target_abs_tol > 0.0) || !self.target_abs_tol.is_finite() {
            return Err(Error::Domain(format!(
                "target_abs_tol = {} must be positive",
                self.target_abs_tol
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_finite(z: num_complex::Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} is not finite: {z}")))
    }
}
