//! Operator algebra on evaluable functions: `x·`, `p = -i d/dx`,
//! `X = Σ x Δ` and `R = Xp + pX`.

use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use lru::LruCache;
use num_complex::Complex64;

use crate::specfun::SpecFunConfig;
use crate::sum::{
    flatness_probe, forward_difference, fractional_sum_limit, EvalFn, FlatnessVerdict,
    SummationConfig, U_LO,
};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Summation tolerance used for `Xf` when it is differentiated numerically.
pub const DIFFERENTIATED_SUM_TOL: f64 = 1e-10;

/// Default evaluation grid in `U`.
pub const DEFAULT_SAMPLE_GRID: [f64; 10] = [-0.9, -0.5, -0.1, 0.25, 0.5, 1.0, 1.5, 2.5, 5.0, 10.0];

/// Offsets used by the lazy flatness check of `x Δf` in strict mode.
const PROBE_OFFSETS: [f64; 3] = [0.5, 1.0, 2.5];

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorConfig {
    /// Central-difference step `h`.
    pub diff_step: f64,
    /// Combine steps `h` and `h/2` by Richardson extrapolation.
    pub diff_richardson: bool,
    pub sum_cfg: SummationConfig,
    pub sample_grid: Vec<f64>,
    pub spec: SpecFunConfig,
    /// Bound on memoized `Xf` values per operator application.
    pub cache_capacity: usize,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self {
            diff_step: 1e-4,
            diff_richardson: true,
            sum_cfg: SummationConfig::default(),
            sample_grid: DEFAULT_SAMPLE_GRID.to_vec(),
            spec: SpecFunConfig::default(),
            cache_capacity: 1 << 16,
        }
    }
}

impl OperatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-7..=1e-2).contains(&self.diff_step) {
            return Err(Error::Domain(format!(
                "diff_step = {:e} outside [1e-7, 1e-2]",
                self.diff_step
            )));
        }
        if self.sample_grid.is_empty() {
            return Err(Error::Domain("sample_grid is empty".into()));
        }
        if let Some(x) = self.sample_grid.iter().find(|&&x| !(x > U_LO)) {
            return Err(Error::Domain(format!("sample point {x} not in U")));
        }
        if self.cache_capacity == 0 {
            return Err(Error::Domain("cache_capacity must be positive".into()));
        }
        self.sum_cfg.validate()?;
        self.spec.validate()
    }
}

/// `(x f)(x) = x·f(x)`.
pub fn apply_x_mult(f: &EvalFn) -> EvalFn {
    let g = f.clone();
    let out = EvalFn::new(f.domain_lo(), format!("x*{}", f.label()), move |x| Ok(g.eval(x)? * x));
    if f.has_derivative() {
        let g = f.clone();
        out.with_derivative(move |x| Ok(g.eval(x)? + g.derivative(x).expect("checked")? * x))
    } else {
        out
    }
}

fn central(f: &EvalFn, x: f64, h: f64) -> Result<Complex64> {
    Ok((f.eval(x + h)? - f.eval(x - h)?) / (2.0 * h))
}

fn forward(f: &EvalFn, x: f64, h: f64) -> Result<Complex64> {
    Ok((f.eval(x)? * -3.0 + f.eval(x + h)? * 4.0 - f.eval(x + 2.0 * h)?) / (2.0 * h))
}

/// `f'(x)` by second-order finite differences, central in the interior and
/// one-sided within `2h` of the left endpoint; optionally Richardson
/// combined over `h` and `h/2`.
pub fn numeric_derivative(f: &EvalFn, x: f64, h: f64, richardson: bool) -> Result<Complex64> {
    let stencil = if x - f.domain_lo() < 2.0 * h { forward } else { central };
    let coarse = stencil(f, x, h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = stencil(f, x, 0.5 * h)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

/// `p f = -i f'`, analytic when `f` carries a derivative.
pub fn apply_p(f: &EvalFn, cfg: &OperatorConfig) -> EvalFn {
    let g = f.clone();
    let (h, richardson) = (cfg.diff_step, cfg.diff_richardson);
    EvalFn::new(f.domain_lo(), format!("p[{}]", f.label()), move |x| {
        let d = match g.derivative(x) {
            Some(d) => d?,
            None => numeric_derivative(&g, x, h, richardson)?,
        };
        Ok(-I * d)
    })
}

/// `X f = Σ x Δf`, a function on `U` vanishing at `x = 0`.
///
/// Values are memoized per point. In strict mode the summand `x Δf` is
/// probed for flatness on first use and non-converged sums are errors.
pub fn apply_big_x(f: &EvalFn, cfg: &OperatorConfig) -> Result<EvalFn> {
    apply_big_x_with(f, cfg, &cfg.sum_cfg)
}

pub(crate) fn apply_big_x_with(f: &EvalFn, cfg: &OperatorConfig, sum_cfg: &SummationConfig) -> Result<EvalFn> {
    cfg.validate()?;
    if f.domain_lo() > U_LO {
        return Err(Error::Domain(format!(
            "X needs a function on U, {} starts at {}",
            f.label(),
            f.domain_lo()
        )));
    }
    let summand = apply_x_mult(&forward_difference(f)).without_derivative();
    // A tightened tolerance sets the effort; strict failure is judged
    // against the caller's own tolerance.
    let (strict, fail_tol) = (cfg.sum_cfg.strict, cfg.sum_cfg.abs_tol);
    let sum_cfg = SummationConfig {
        strict: false,
        ..*sum_cfg
    };
    let capacity = NonZeroUsize::new(cfg.cache_capacity).expect("validated");
    let cache: Arc<Mutex<LruCache<u64, Complex64>>> = Arc::new(Mutex::new(LruCache::new(capacity)));
    let probe: Arc<OnceLock<Result<()>>> = Arc::new(OnceLock::new());
    let label = format!("X[{}]", f.label());
    Ok(EvalFn::new(U_LO, label, move |x| {
        if x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if strict {
            probe
                .get_or_init(|| {
                    let report = flatness_probe(&summand, &PROBE_OFFSETS, &sum_cfg)?;
                    if report.verdict == FlatnessVerdict::NotFlat {
                        Err(Error::Domain(format!(
                            "{} is not asymptotically flat",
                            summand.label()
                        )))
                    } else {
                        Ok(())
                    }
                })
                .clone()?;
        }
        let key = x.to_bits();
        if let Some(v) = cache.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let r = fractional_sum_limit(&summand, x, &sum_cfg)?;
        if strict && !(r.err_estimate <= fail_tol) {
            return Err(Error::Convergence(format!(
                "fractional sum of {} at x = {x}: error estimate {:e} > {fail_tol:e} at n = {}",
                summand.label(),
                r.err_estimate,
                r.n_used
            )));
        }
        let v = r.value;
        cache.lock().expect("cache lock").put(key, v);
        Ok(v)
    }))
}

/// `R f = X p f + p X f`.
///
/// `X f` is summed with `abs_tol` tightened to [`DIFFERENTIATED_SUM_TOL`]
/// because the numeric derivative amplifies its error by `1/h`.
pub fn apply_r(f: &EvalFn, cfg: &OperatorConfig) -> Result<EvalFn> {
    cfg.validate()?;
    let x_of_pf = apply_big_x(&apply_p(f, cfg), cfg)?;
    let tight = cfg.sum_cfg.tightened(DIFFERENTIATED_SUM_TOL);
    let p_of_xf = apply_p(&apply_big_x_with(f, cfg, &tight)?, cfg);
    let one = Complex64::new(1.0, 0.0);
    let sum = EvalFn::linear_combination(one, &x_of_pf, one, &p_of_xf);
    let label = format!("R[{}]", f.label());
    Ok(EvalFn::new(sum.domain_lo(), label, move |x| sum.eval(x)))
}

/// Eigenvalue `i(2s - 1)` of the dilation operator `xp + px` on `x^(-s)`.
pub fn continuum_dilation(s: Complex64) -> Complex64 {
    I * (s * 2.0 - 1.0)
}

/// Applies `x p + p x` numerically to `x^(-s)` on `grid ⊂ (0, ∞)` and
/// returns the largest deviation of `((xp+px) g)(x) / g(x)` from `i(2s-1)`.
pub fn continuum_dilation_check(s: Complex64, grid: &[f64], cfg: &OperatorConfig) -> Result<f64> {
    let g = EvalFn::power(s).without_derivative();
    let xp = apply_x_mult(&apply_p(&g, cfg));
    let px = apply_p(&apply_x_mult(&g), cfg);
    let expected = continuum_dilation(s);
    let mut worst = 0.0f64;
    for &x in grid {
        let ratio = (xp.eval(x)? + px.eval(x)?) / g.eval(x)?;
        worst = worst.max((ratio - expected).norm());
    }
    Ok(worst)
}

/// `sup_{x ∈ grid} |f(x) - g(x)|`.
pub fn sup_defect(f: &EvalFn, g: &EvalFn, grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in grid {
        worst = worst.max((f.eval(x)? - g.eval(x)?).norm());
    }
    Ok(worst)
}

/// `sup_{x ∈ grid} |f(x)|`.
pub fn sup_norm(f: &EvalFn, grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in grid {
        worst = worst.max(f.eval(x)?.norm());
    }
    Ok(worst)
}
