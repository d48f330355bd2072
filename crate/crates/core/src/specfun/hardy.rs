use std::f64::consts::PI;

use num_complex::Complex64;

use super::{log_gamma, riemann_zeta, SpecFunConfig};
use crate::{Error, Result};

/// Imaginary part tolerated (and discarded) in `e^{iθ} ζ(1/2+it)`.
const IMAG_TOL: f64 = 1e-9;

/// Riemann–Siegel theta `θ(t) = Im ln Γ(1/4 + it/2) - (t/2) ln π`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// Hardy Z function `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z(t: f64, cfg: &SpecFunConfig) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("hardy_z needs t >= 0, got {t}")));
    }
    let theta = riemann_siegel_theta(t)?;
    let z = Complex64::from_polar(1.0, theta) * riemann_zeta(Complex64::new(0.5, t), cfg)?;
    if z.im.abs() >= IMAG_TOL {
        return Err(Error::Convergence(format!(
            "Z({t}) has imaginary residue {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        let cfg = SpecFunConfig::default();
        assert_eq!(riemann_siegel_theta(0.0).unwrap(), 0.0);
        assert!((hardy_z(0.0, &cfg).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-12);
    }

    #[test]
    fn brackets_first_zero() {
        let cfg = SpecFunConfig::default();
        assert!(hardy_z(14.0, &cfg).unwrap() * hardy_z(14.3, &cfg).unwrap() < 0.0);
        assert!(hardy_z(14.134_725_141_7, &cfg).unwrap().abs() < 1e-6);
    }

    #[test]
    fn theta_matches_asymptotic_expansion() {
        // θ(t) ≈ t/2 ln(t/2π) - t/2 - π/8 + 1/(48t) + 7/(5760 t³)
        let t = 50.0f64;
        let approx = t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
            + 1.0 / (48.0 * t)
            + 7.0 / (5760.0 * t.powi(3));
        assert!((riemann_siegel_theta(t).unwrap() - approx).abs() < 1e-9);
    }

    #[test]
    fn imaginary_residue_small_on_grid() {
        let cfg = SpecFunConfig::default();
        for i in 0..=600 {
            assert!(hardy_z(i as f64 * 0.1, &cfg).is_ok());
        }
        assert!(hardy_z(-1.0, &cfg).is_err());
    }
}
