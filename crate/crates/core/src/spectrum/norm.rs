//! Finite-range diagnostics for `∫_0^∞ |Δ_{1/2} x^[-s]|² dx`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::SpecFunConfig;
use crate::sum::{frac_power_fn, half_difference, EvalFn};
use crate::{Error, Result};

/// Points in the log-log decay fit.
const FIT_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormTrend {
    /// Increments over successive doublings shrink.
    Finite,
    /// Increments over successive doublings do not shrink.
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfShiftNorm {
    /// `∫_0^T |Δ_{1/2} x^[-s]|² dx`.
    pub truncated_norm_sq: f64,
    /// Fitted slope of `ln |Δ_{1/2} x^[-s]|²` against `ln x` on `[T/4, T]`.
    pub decay_exponent: f64,
    /// `∫_{T/2}^T`.
    pub increment_before: f64,
    /// `∫_T^{2T}`.
    pub increment_after: f64,
    /// `increment_after / increment_before`, about `2^(1 - 2 Re(s))`.
    pub tail_ratio: f64,
    pub trend: NormTrend,
}

/// Composite Simpson in `u = ln(1 + x)`, which grades the nodes towards 0.
fn integrate(g: &EvalFn, lo: f64, hi: f64, intervals: usize) -> Result<f64> {
    let n = intervals + intervals % 2;
    let (u0, u1) = ((1.0 + lo).ln(), (1.0 + hi).ln());
    let h = (u1 - u0) / n as f64;
    let integrand = |u: f64| -> Result<f64> {
        let x = (u.exp() - 1.0).clamp(lo, hi);
        Ok(g.eval(x)?.norm_sqr() * u.exp())
    };
    let mut acc = integrand(u0)? + integrand(u1)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * integrand(u0 + i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

fn fit_decay(g: &EvalFn, lo: f64, hi: f64) -> Result<f64> {
    let mut pts = Vec::with_capacity(FIT_POINTS);
    for i in 0..FIT_POINTS {
        let lx = lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (FIT_POINTS - 1) as f64;
        let v = g.eval(lx.exp())?.norm_sqr();
        if v > 0.0 {
            pts.push((lx, v.ln()));
        }
    }
    if pts.len() < 2 {
        return Err(Error::Domain("half-shift integrand vanishes on the fit range".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Truncated half-shift norm of `x^[-s]` and its decay diagnostics.
pub fn half_shift_norm(
    s: Complex64,
    t_upper: f64,
    quad_points: usize,
    cfg: &SpecFunConfig,
) -> Result<HalfShiftNorm> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("half-shift norm needs Re(s) > 0, got {s}")));
    }
    if !(t_upper >= 100.0) || !t_upper.is_finite() {
        return Err(Error::Domain(format!("T = {t_upper} must be >= 100")));
    }
    if quad_points < 1000 {
        return Err(Error::Domain(format!("quad_points = {quad_points} < 1000")));
    }
    let g = half_difference(&frac_power_fn(s, cfg)?);
    let truncated_norm_sq = integrate(&g, 0.0, t_upper, quad_points)?;
    let increment_before = integrate(&g, 0.5 * t_upper, t_upper, quad_points)?;
    let increment_after = integrate(&g, t_upper, 2.0 * t_upper, quad_points)?;
    let tail_ratio = increment_after / increment_before;
    Ok(HalfShiftNorm {
        truncated_norm_sq,
        decay_exponent: fit_decay(&g, 0.25 * t_upper, t_upper)?,
        increment_before,
        increment_after,
        tail_ratio,
        trend: if tail_ratio < 1.0 {
            NormTrend::Finite
        } else {
            NormTrend::Divergent
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_on_known_integrand() {
        // ∫_0^10 |Δ_{1/2} x|² dx = 10/4
        let g = half_difference(&EvalFn::identity());
        let v = integrate(&g, 0.0, 10.0, 1000).unwrap();
        assert!((v - 2.5).abs() < 1e-10);
    }

    #[test]
    fn preconditions() {
        let cfg = SpecFunConfig::default();
        let s = Complex64::new(2.0, 0.0);
        assert!(half_shift_norm(Complex64::new(0.0, 1.0), 200.0, 1000, &cfg).is_err());
        assert!(half_shift_norm(s, 50.0, 1000, &cfg).is_err());
        assert!(half_shift_norm(s, 200.0, 999, &cfg).is_err());
    }

    #[test]
    fn decay_of_inverse_square() {
        let cfg = SpecFunConfig::default();
        let r = half_shift_norm(Complex64::new(2.0, 0.0), 200.0, 1000, &cfg).unwrap();
        assert!((-4.2..=-3.8).contains(&r.decay_exponent), "{r:?}");
        assert_eq!(r.trend, NormTrend::Finite);
    }
}
