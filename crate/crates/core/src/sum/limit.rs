use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::EvalFn;
use crate::{Error, Result};

/// Acceleration applied to the partial limits `S_n(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceleration {
    /// Report the last partial limit.
    None,
    /// Repeated three-point fits `S_n ≈ S_∞ + C n^(-α)` on the doubling
    /// schedule. `α` may be complex, so oscillating tails are handled.
    RichardsonPowerLaw,
}

/// Controls the evaluation of `lim_n x f(n) + Σ_{ν=1}^n (f(ν) - f(ν+x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummationConfig {
    /// First schedule index.
    pub n0: usize,
    /// Initial number of schedule points `n0, 2 n0, …, 2^(K-1) n0`.
    pub count: usize,
    pub abs_tol: f64,
    pub acceleration: Acceleration,
    /// The schedule is extended by doubling while unconverged, up to here.
    pub max_n: usize,
    /// Fail with [`Error::Convergence`] instead of returning an unconverged result.
    pub strict: bool,
}

impl Default for SummationConfig {
    fn default() -> Self {
        Self {
            n0: 64,
            count: 6,
            abs_tol: 1e-8,
            acceleration: Acceleration::RichardsonPowerLaw,
            max_n: 1 << 15,
            strict: false,
        }
    }
}

impl SummationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n0 < 16 {
            return Err(Error::Domain(format!("n0 = {} < 16", self.n0)));
        }
        if self.count < 4 {
            return Err(Error::Domain(format!("schedule count {} < 4", self.count)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain(format!("abs_tol = {} must be > 0", self.abs_tol)));
        }
        let last = self
            .n0
            .checked_shl(self.count as u32 - 1)
            .filter(|v| v >> (self.count - 1) == self.n0)
            .ok_or_else(|| Error::Domain("schedule overflows".into()))?;
        if self.max_n < last {
            return Err(Error::Domain(format!(
                "max_n = {} below last schedule index {last}",
                self.max_n
            )));
        }
        Ok(())
    }

    /// Copy with `abs_tol` tightened to at most `tol`.
    pub fn tightened(&self, tol: f64) -> Self {
        Self {
            abs_tol: self.abs_tol.min(tol),
            ..*self
        }
    }
}

/// Value of a fractional sum with convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracSumResult {
    pub value: Complex64,
    pub err_estimate: f64,
    /// Largest summation index used.
    pub n_used: usize,
    pub converged: bool,
    /// Fitted `Re(α)` in `S_n - S_∞ ~ C n^(-α)`; `None` for exact sums.
    pub decay_exponent_estimate: Option<f64>,
}

/// One three-point power-law fit. On a doubling schedule the error ratio
/// `2^(-α)` is constant, so `S_∞ = c - d2² / (d2 - d1)`.
fn power_law_fit(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let d1 = b - a;
    let d2 = c - b;
    let den = d2 - d1;
    if d2.norm() <= 4.0 * f64::EPSILON * c.norm() || den.norm() <= 1e-300 {
        return c;
    }
    c - d2 * d2 / den
}

/// Returns the extrapolant and its error estimate.
fn extrapolate(seq: &[Complex64], acceleration: Acceleration) -> (Complex64, f64) {
    let n = seq.len();
    match acceleration {
        Acceleration::None => (seq[n - 1], (seq[n - 1] - seq[n - 2]).norm()),
        Acceleration::RichardsonPowerLaw => {
            let mut prev: Vec<Complex64> = seq.to_vec();
            loop {
                if prev.len() < 3 {
                    let k = prev.len();
                    return (prev[k - 1], (prev[k - 1] - prev[k - 2]).norm());
                }
                let next: Vec<Complex64> = prev
                    .windows(3)
                    .map(|w| power_law_fit(w[0], w[1], w[2]))
                    .collect();
                if next.len() == 1 {
                    let last = *prev.last().expect("nonempty");
                    return (next[0], (next[0] - last).norm());
                }
                prev = next;
            }
        }
    }
}

fn decay_exponent(seq: &[Complex64]) -> Option<f64> {
    let n = seq.len();
    let d1 = (seq[n - 2] - seq[n - 3]).norm();
    let d2 = (seq[n - 1] - seq[n - 2]).norm();
    if d1 > 0.0 && d2 > 0.0 {
        Some(-(d2 / d1).log2())
    } else {
        None
    }
}

/// The fractional sum `Σ_{ν=1}^x f(ν)` for `x > -1`.
///
/// Integer `x ≥ 0` is summed exactly. Otherwise partial limits are taken
/// along `n0, 2 n0, …` and accelerated; the schedule keeps doubling up to
/// `max_n` while the error estimate exceeds `abs_tol` and still improves.
pub fn fractional_sum_limit(f: &EvalFn, x: f64, cfg: &SummationConfig) -> Result<FracSumResult> {
    cfg.validate()?;
    if !(x > -1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("fractional sum needs x > -1, got {x}")));
    }
    if f.domain_lo() > 0.0 {
        return Err(Error::Domain(format!(
            "summand {} must be defined on (0, ∞)",
            f.label()
        )));
    }
    if x.fract() == 0.0 && x <= cfg.max_n as f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for nu in 1..=(x as usize) {
            acc += f.eval(nu as f64)?;
        }
        return Ok(FracSumResult {
            value: acc,
            err_estimate: 0.0,
            n_used: x as usize,
            converged: true,
            decay_exponent_estimate: None,
        });
    }

    let mut acc = Complex64::new(0.0, 0.0);
    let mut nu = 0usize;
    let mut seq = Vec::with_capacity(cfg.count + 8);
    let mut n = cfg.n0;
    let mut best: Option<(Complex64, f64, usize)> = None;
    let mut worse_streak = 0;
    loop {
        while nu < n {
            nu += 1;
            let v = nu as f64;
            acc += f.eval(v)? - f.eval(v + x)?;
        }
        seq.push(acc + f.eval(n as f64)? * x);
        if seq.len() >= cfg.count {
            let (value, err) = extrapolate(&seq, cfg.acceleration);
            match best {
                Some((_, best_err, _)) if err >= best_err => worse_streak += 1,
                _ => {
                    best = Some((value, err, n));
                    worse_streak = 0;
                }
            }
            let best_err = best.expect("set above").1;
            let next = n.checked_mul(2).filter(|&m| m <= cfg.max_n);
            if best_err <= cfg.abs_tol || next.is_none() || worse_streak >= 2 {
                break;
            }
        }
        n *= 2;
    }
    let (value, err_estimate, n_used) = best.expect("schedule has at least count points");
    let converged = err_estimate <= cfg.abs_tol;
    if cfg.strict && !converged {
        return Err(Error::Convergence(format!(
            "fractional sum of {} at x = {x}: error estimate {err_estimate:e} > {:e} at n = {n_used}",
            f.label(),
            cfg.abs_tol
        )));
    }
    Ok(FracSumResult {
        value,
        err_estimate,
        n_used,
        converged,
        decay_exponent_estimate: decay_exponent(&seq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hurwitz_zeta, log_gamma, riemann_zeta, SpecFunConfig};

    #[test]
    fn integer_points_are_exact_sums() {
        let cfg = SummationConfig::default();
        let r = fractional_sum_limit(&EvalFn::log(), 3.0, &cfg).unwrap();
        assert_eq!(r.value.re, 1f64.ln() + 2f64.ln() + 3f64.ln());
        assert!(r.converged && r.err_estimate == 0.0);
        let r = fractional_sum_limit(&EvalFn::log(), 0.0, &cfg).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn log_half_is_log_gamma() {
        let cfg = SummationConfig::default();
        let r = fractional_sum_limit(&EvalFn::log(), 0.5, &cfg).unwrap();
        let expected = log_gamma(Complex64::new(1.5, 0.0)).unwrap();
        assert!((r.value - expected).norm() < 1e-9, "{r:?}");
        assert!((r.value.re + 0.120_782_237_635_245_2).abs() < 1e-9);
        assert!(r.converged);
    }

    #[test]
    fn inverse_square_at_half() {
        let cfg = SummationConfig::default();
        let spec = SpecFunConfig::default();
        let s = Complex64::new(2.0, 0.0);
        let r = fractional_sum_limit(&EvalFn::power(s), 0.5, &cfg).unwrap();
        let oracle = riemann_zeta(s, &spec).unwrap() - hurwitz_zeta(s, 1.5, &spec).unwrap();
        assert!((r.value - oracle).norm() < 1e-10);
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((r.value.re - (pi2 / 6.0 - (pi2 / 2.0 - 4.0))).abs() < 1e-10);
        // Decay S_n - S_∞ ~ n^(-s-1).
        let alpha = r.decay_exponent_estimate.unwrap();
        assert!((alpha - 3.0).abs() < 0.1, "{alpha}");
    }

    #[test]
    fn unaccelerated_is_slower() {
        let cfg = SummationConfig {
            acceleration: Acceleration::None,
            max_n: 2048,
            ..SummationConfig::default()
        };
        let s = Complex64::new(0.5, 0.0);
        let r = fractional_sum_limit(&EvalFn::power(s), 0.5, &cfg).unwrap();
        assert!(!r.converged);
        assert!(fractional_sum_limit(&EvalFn::power(s), 0.5, &SummationConfig { strict: true, ..cfg }).is_err());
        let fast = fractional_sum_limit(&EvalFn::power(s), 0.5, &SummationConfig::default()).unwrap();
        assert!(fast.converged);
    }

    #[test]
    fn preconditions() {
        let cfg = SummationConfig::default();
        assert!(matches!(
            fractional_sum_limit(&EvalFn::log(), -1.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            fractional_sum_limit(&EvalFn::log(), f64::NAN, &cfg),
            Err(Error::Domain(_))
        ));
        let shifted = EvalFn::new(1.0, "on (1,∞)", |x| Ok(Complex64::new(x, 0.0)));
        assert!(fractional_sum_limit(&shifted, 0.5, &cfg).is_err());
        let bad = SummationConfig { n0: 8, ..cfg };
        assert!(bad.validate().is_err());
        let bad = SummationConfig { max_n: 100, ..cfg };
        assert!(bad.validate().is_err());
        let bad = SummationConfig { count: 3, ..cfg };
        assert!(bad.validate().is_err());
    }
}
