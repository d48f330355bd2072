use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::operators::{apply_r, OperatorConfig};
use crate::specfun::{riemann_zeta, SpecFunConfig};
use crate::sum::{frac_power, frac_power_fn, S_ONE_BRANCH_RADIUS};
use crate::{Error, Result};

/// `is_eigen` threshold on the analytic residual.
pub const EIGEN_TOL: f64 = 1e-6;
/// `lambda_is_real` threshold on `|Im λ|`.
pub const REALITY_TOL: f64 = 1e-9;
/// Acceptance gate for the fully numeric residual.
pub const NUMERIC_RESIDUAL_GATE: f64 = 1e-3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `λ = i(2s - 1)`.
pub fn eigenvalue_of(s: Complex64) -> Complex64 {
    // i(2s - 1) = -2 Im(s) + i(2 Re(s) - 1), written out so that
    // Re(s) = 1/2 gives an exactly zero imaginary part; `+ 0.0` drops -0.
    Complex64::new(-2.0 * s.im + 0.0, 2.0 * s.re - 1.0)
}

/// The candidate eigenfunction family `α x^[-s] + β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenCandidate {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub s: Complex64,
}

impl EigenCandidate {
    pub fn new(alpha: Complex64, beta: Complex64, s: Complex64) -> Result<Self> {
        if alpha != Complex64::new(0.0, 0.0) && !(s.re > 0.0) {
            return Err(Error::Domain(format!(
                "eigencandidate with alpha != 0 needs Re(s) > 0, got {s}"
            )));
        }
        Ok(Self { alpha, beta, s })
    }

    pub fn eval(&self, x: f64, cfg: &SpecFunConfig) -> Result<Complex64> {
        Ok(self.alpha * frac_power(x, self.s, cfg)? + self.beta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub s: Complex64,
    pub lambda: Complex64,
    pub zeta_s: Option<Complex64>,
    /// `|(s-1) ζ(s)|`, or 1 at `s = 1`.
    pub analytic_residual: f64,
    /// `sup_grid |R f - i(2s-1) f + i(s-1) ζ(s)|` through the numeric operators.
    pub numeric_residual: Option<f64>,
    pub boundary_f0: Complex64,
    /// `f(-1/2) = (2 - 2^s) ζ(s)`.
    pub boundary_fhalf: Complex64,
    pub is_eigen: bool,
    pub lambda_is_real: bool,
}

/// The `(s - 1) ζ(s)` term of `R x^[-s]`, replaced by 1 at `s = 1`.
fn pole_free_term(s: Complex64, cfg: &SpecFunConfig) -> Result<(Complex64, Option<Complex64>)> {
    if (s - 1.0).norm() < S_ONE_BRANCH_RADIUS {
        return Ok((Complex64::new(1.0, 0.0), None));
    }
    let zeta = riemann_zeta(s, cfg)?;
    Ok(((s - 1.0) * zeta, Some(zeta)))
}

/// Closed-form eigen report for `f = x^[-s]`, without the numeric pipeline.
pub fn eigen_report(s: Complex64, cfg: &SpecFunConfig) -> Result<EigenReport> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!(
            "x^[-s] is in the domain of R only for Re(s) > 0, got {s}"
        )));
    }
    let lambda = eigenvalue_of(s);
    let (term, zeta_s) = pole_free_term(s, cfg)?;
    let analytic_residual = term.norm();
    let lambda_is_real = lambda.im.abs() < REALITY_TOL;
    debug_assert_eq!(lambda_is_real, (2.0 * s.re - 1.0).abs() < REALITY_TOL);
    Ok(EigenReport {
        s,
        lambda,
        zeta_s,
        analytic_residual,
        numeric_residual: None,
        boundary_f0: frac_power(0.0, s, cfg)?,
        boundary_fhalf: frac_power(-0.5, s, cfg)?,
        is_eigen: analytic_residual < EIGEN_TOL,
        lambda_is_real,
    })
}

/// [`eigen_report`] plus the numeric residual of `R x^[-s]` against its
/// closed form, sampled on `cfg.sample_grid`.
pub fn eigen_residual(s: Complex64, cfg: &OperatorConfig) -> Result<EigenReport> {
    let mut report = eigen_report(s, &cfg.spec)?;
    let f = frac_power_fn(s, &cfg.spec)?;
    let rf = apply_r(&f, cfg)?;
    let (term, _) = pole_free_term(s, &cfg.spec)?;
    let mut worst = 0.0f64;
    for &x in &cfg.sample_grid {
        let closed = report.lambda * f.eval(x)? - I * term;
        worst = worst.max((rf.eval(x)? - closed).norm());
    }
    report.numeric_residual = Some(worst);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue_of(c(0.5, 0.0)), c(0.0, 0.0));
        assert_eq!(eigenvalue_of(c(2.0, 0.0)), c(0.0, 3.0));
        let l = eigenvalue_of(c(0.5, 21.0));
        assert_eq!(l, c(-42.0, 0.0));
        assert_eq!(l.im, 0.0);
    }

    #[test]
    fn report_at_two_and_one() {
        let cfg = SpecFunConfig::default();
        let r = eigen_report(c(2.0, 0.0), &cfg).unwrap();
        assert!((r.analytic_residual - 1.644_934_066_848_226_4).abs() < 1e-12);
        assert!(!r.is_eigen && !r.lambda_is_real);
        assert_eq!(r.lambda, c(0.0, 3.0));
        let r = eigen_report(c(1.0, 0.0), &cfg).unwrap();
        assert_eq!(r.analytic_residual, 1.0);
        assert_eq!(r.lambda, c(0.0, 1.0));
        assert!(r.zeta_s.is_none());
        assert!(eigen_report(c(0.0, 3.0), &cfg).is_err());
    }

    #[test]
    fn report_at_first_zero() {
        let cfg = SpecFunConfig::default();
        let t = 14.134_725_141_734_693;
        let r = eigen_report(c(0.5, t), &cfg).unwrap();
        assert!(r.is_eigen && r.lambda_is_real);
        assert!((r.lambda.re + 2.0 * t).abs() < 1e-12);
        assert_eq!(r.boundary_f0, c(0.0, 0.0));
        assert!(r.boundary_fhalf.norm() < 1e-6);
    }

    #[test]
    fn candidate_family() {
        let cfg = SpecFunConfig::default();
        assert!(EigenCandidate::new(c(1.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)).is_err());
        let k = EigenCandidate::new(c(0.0, 0.0), c(2.0, 0.0), c(-0.5, 0.0)).unwrap();
        assert_eq!(k.eval(3.0, &cfg).unwrap(), c(2.0, 0.0));
        let e = EigenCandidate::new(c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((e.eval(1.0, &cfg).unwrap() - 3.0).norm() < 1e-12);
    }
}
