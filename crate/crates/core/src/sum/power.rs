use num_complex::Complex64;

use super::{EvalFn, U_LO};
use crate::specfun::{digamma, euler_gamma, hurwitz_zeta, log_gamma, riemann_zeta, SpecFunConfig};
use crate::{Diagnostic, Error, Result};

/// Below this distance from `s = 1` the closed form `γ + Ψ(x+1)` is used.
pub const S_ONE_BRANCH_RADIUS: f64 = 1e-8;
/// Below this distance `ζ(s) - ζ(s, x+1)` is flagged for pole cancellation.
pub const S_ONE_WARNING_RADIUS: f64 = 1e-3;

/// Integer points up to here are summed term by term, which avoids the
/// cancellation in `ζ(s) - ζ(s, x+1)`.
const DIRECT_SUM_MAX: f64 = 256.0;

fn direct_sum(x: f64, s: Complex64) -> Option<Complex64> {
    if x.fract() != 0.0 || x > DIRECT_SUM_MAX {
        return None;
    }
    Some((1..=x as u32).rev().map(|nu| (-s * (nu as f64).ln()).exp()).sum())
}

fn check_args(x: f64, s: Complex64) -> Result<()> {
    if !(x > -1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x^[-s] needs x > -1, got x = {x}")));
    }
    if !(s.re > -1.0) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::Domain(format!("x^[-s] needs Re(s) > -1, got s = {s}")));
    }
    Ok(())
}

fn near_one(s: Complex64) -> f64 {
    (s - 1.0).norm()
}

/// `x^[-s] = Σ_{ν=1}^x ν^(-s)` via its closed forms, with any cancellation
/// warnings.
pub fn frac_power_with_diagnostics(
    x: f64,
    s: Complex64,
    cfg: &SpecFunConfig,
) -> Result<(Complex64, Vec<Diagnostic>)> {
    check_args(x, s)?;
    let mut diagnostics = Vec::new();
    if let Some(v) = direct_sum(x, s) {
        return Ok((v, diagnostics));
    }
    let dist = near_one(s);
    if dist < S_ONE_BRANCH_RADIUS {
        let v = digamma(Complex64::new(x + 1.0, 0.0))? + euler_gamma();
        return Ok((v, diagnostics));
    }
    if dist < S_ONE_WARNING_RADIUS {
        diagnostics.push(Diagnostic::warning(format!(
            "|s - 1| = {dist:.3e}: zeta(s) - zeta(s, x+1) cancels two poles"
        )));
    }
    let v = riemann_zeta(s, cfg)? - hurwitz_zeta(s, x + 1.0, cfg)?;
    Ok((v, diagnostics))
}

/// `x^[-s]` for `x > -1`, `Re(s) > -1`: `ζ(s) - ζ(s, x+1)`, or `γ + Ψ(x+1)`
/// at `s = 1`.
pub fn frac_power(x: f64, s: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    frac_power_with_diagnostics(x, s, cfg).map(|(v, _)| v)
}

/// `d/dx x^[-s] = -s x^[-s-1] + s ζ(1+s)`.
///
/// At `s → 0` the pole of `ζ(1+s)` cancels the factor `s`; there the first
/// order expansion `1 + s (γ - x^[-1])` is returned, which is the derivative
/// of `x^[0] = x`.
pub fn frac_power_derivative(x: f64, s: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    check_args(x, s)?;
    if s.norm() < S_ONE_BRANCH_RADIUS {
        let harmonic = frac_power(x, Complex64::new(1.0, 0.0), cfg)?;
        return Ok(1.0 + s * (euler_gamma() - harmonic));
    }
    let s1 = s + 1.0;
    Ok(-s * frac_power(x, s1, cfg)? + s * riemann_zeta(s1, cfg)?)
}

/// `x^[-s]` as an [`EvalFn`] on `U` with its analytic derivative attached.
/// `ζ(s)` and `ζ(1+s)` are computed once.
pub fn frac_power_fn(s: Complex64, cfg: &SpecFunConfig) -> Result<EvalFn> {
    check_args(0.0, s)?;
    let cfg = *cfg;
    let label = format!("x^[-({s})]");
    let eval: Box<dyn Fn(f64) -> Result<Complex64> + Send + Sync> =
        if near_one(s) < S_ONE_BRANCH_RADIUS {
            Box::new(move |x| {
                if let Some(v) = direct_sum(x, s) {
                    return Ok(v);
                }
                Ok(digamma(Complex64::new(x + 1.0, 0.0))? + euler_gamma())
            })
        } else {
            let zeta_s = riemann_zeta(s, &cfg)?;
            Box::new(move |x| {
                if let Some(v) = direct_sum(x, s) {
                    return Ok(v);
                }
                Ok(zeta_s - hurwitz_zeta(s, x + 1.0, &cfg)?)
            })
        };
    let derivative: Box<dyn Fn(f64) -> Result<Complex64> + Send + Sync> =
        if s.norm() < S_ONE_BRANCH_RADIUS {
            Box::new(move |x| frac_power_derivative(x, s, &cfg))
        } else {
            let s1 = s + 1.0;
            let zeta_s1 = riemann_zeta(s1, &cfg)?;
            Box::new(move |x| {
                let lower = if x == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    zeta_s1 - hurwitz_zeta(s1, x + 1.0, &cfg)?
                };
                Ok(-s * lower + s * zeta_s1)
            })
        };
    Ok(EvalFn::new(U_LO, label, eval)
        .with_derivative(derivative)
        .with_difference(move |x| Ok((-s * x.ln()).exp())))
}

/// `Σ_{ν=1}^x ln ν = ln Γ(x+1)`.
pub fn sum_log(x: f64) -> Result<Complex64> {
    if !(x > -1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("sum_log needs x > -1, got {x}")));
    }
    log_gamma(Complex64::new(x + 1.0, 0.0))
}
