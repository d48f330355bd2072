use std::f64::consts::TAU;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_complex::Complex64;

use super::{U_LO, U_PLUS_LO};
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// Pointwise map used inside [`EvalFn`].
pub type PointMap = dyn Fn(f64) -> Result<Complex64> + Send + Sync;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A complex-valued function on the open interval `(domain_lo, ∞)`.
///
/// Cloning is cheap and shares the underlying closures.
#[derive(Clone)]
pub struct EvalFn {
    domain_lo: f64,
    eval: Arc<PointMap>,
    derivative: Option<Arc<PointMap>>,
    /// Exact `f(x) - f(x-1)`, bypassing the cancellation of two evaluations.
    difference: Option<Arc<PointMap>>,
    label: Arc<str>,
    id: u64,
}

impl fmt::Debug for EvalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvalFn")
            .field("label", &self.label)
            .field("domain_lo", &self.domain_lo)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl EvalFn {
    pub fn new<F>(domain_lo: f64, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    {
        Self {
            domain_lo,
            eval: Arc::new(eval),
            derivative: None,
            difference: None,
            label: label.into().into(),
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        }
    }

    /// Attaches an analytic derivative.
    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    /// Same function with the analytic derivative dropped, as a fresh identity.
    pub fn without_derivative(&self) -> Self {
        Self {
            domain_lo: self.domain_lo,
            eval: Arc::clone(&self.eval),
            derivative: None,
            difference: self.difference.clone(),
            label: self.label.clone(),
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        }
    }

    /// Attaches a closed form for the unit backward difference, used by
    /// [`forward_difference`](super::forward_difference).
    pub fn with_difference<F>(mut self, difference: F) -> Self
    where
        F: Fn(f64) -> Result<Complex64> + Send + Sync + 'static,
    {
        self.difference = Some(Arc::new(difference));
        self
    }

    pub(crate) fn difference_map(&self) -> Option<Arc<PointMap>> {
        self.difference.clone()
    }

    pub fn domain_lo(&self) -> f64 {
        self.domain_lo
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Process-unique identity, used as a memoization key.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if x > self.domain_lo && x.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} evaluated at x = {x}, outside ({}, ∞)",
                self.label, self.domain_lo
            )))
        }
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        self.check_point(x)?;
        let v = (self.eval)(x)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("{} is not finite at x = {x}", self.label)))
        }
    }

    /// Analytic derivative at `x`, if one is attached.
    pub fn derivative(&self, x: f64) -> Option<Result<Complex64>> {
        let d = self.derivative.as_ref()?;
        Some(self.check_point(x).and_then(|_| d(x)))
    }

    /// Constant function on `U`.
    pub fn constant(c: Complex64) -> Self {
        Self::new(U_LO, format!("const({c})"), move |_| Ok(c))
            .with_derivative(|_| Ok(Complex64::new(0.0, 0.0)))
    }

    /// `x ↦ x` on `U`.
    pub fn identity() -> Self {
        Self::new(U_LO, "x", |x| Ok(Complex64::new(x, 0.0)))
            .with_derivative(|_| Ok(Complex64::new(1.0, 0.0)))
    }

    /// `ν ↦ ln ν` on `U⁺`.
    pub fn log() -> Self {
        Self::new(U_PLUS_LO, "log", |x| Ok(Complex64::new(x.ln(), 0.0)))
            .with_derivative(|x| Ok(Complex64::new(1.0 / x, 0.0)))
    }

    /// `ν ↦ ν^(-s) = exp(-s ln ν)` on `U⁺`.
    pub fn power(s: Complex64) -> Self {
        Self::new(U_PLUS_LO, format!("pow(-{s})"), move |x| Ok((-s * x.ln()).exp()))
            .with_derivative(move |x| Ok(-s * (-(s + 1.0) * x.ln()).exp()))
    }

    /// `sin(2πx)` on `U`, reduced modulo 1 so it vanishes exactly at integers.
    pub fn sin_2pi() -> Self {
        Self::new(U_LO, "sin(2pi x)", |x| Ok(Complex64::new(sin_2pi(x), 0.0)))
            .with_derivative(|x| Ok(Complex64::new(TAU * cos_2pi(x), 0.0)))
    }

    /// `cos(2πx)` on `U`.
    pub fn cos_2pi() -> Self {
        Self::new(U_LO, "cos(2pi x)", |x| Ok(Complex64::new(cos_2pi(x), 0.0)))
            .with_derivative(|x| Ok(Complex64::new(-TAU * sin_2pi(x), 0.0)))
    }

    /// `ln Γ(x+1)` on `U`.
    pub fn log_gamma_shifted() -> Self {
        Self::new(U_LO, "lgamma(x+1)", |x| log_gamma(Complex64::new(x + 1.0, 0.0)))
    }

    /// `a·f + b·g` on the intersection of the domains.
    pub fn linear_combination(a: Complex64, f: &EvalFn, b: Complex64, g: &EvalFn) -> Self {
        let lo = f.domain_lo.max(g.domain_lo);
        let (f1, g1) = (f.clone(), g.clone());
        let mut out = Self::new(lo, format!("{a}*{} + {b}*{}", f.label, g.label), move |x| {
            Ok(a * f1.eval(x)? + b * g1.eval(x)?)
        });
        if let (Some(df), Some(dg)) = (f.difference_map(), g.difference_map()) {
            out.difference = Some(Arc::new(move |x| Ok(a * df(x)? + b * dg(x)?)));
        }
        if f.has_derivative() && g.has_derivative() {
            let (f2, g2) = (f.clone(), g.clone());
            out.with_derivative(move |x| {
                let df = f2.derivative(x).expect("checked")?;
                let dg = g2.derivative(x).expect("checked")?;
                Ok(a * df + b * dg)
            })
        } else {
            out
        }
    }

    /// `c·f`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let lo = self.domain_lo;
        let f = self.clone();
        let mut out = Self::new(lo, format!("{c}*{}", self.label), move |x| Ok(c * f.eval(x)?));
        if let Some(d) = self.difference_map() {
            out.difference = Some(Arc::new(move |x| Ok(c * d(x)?)));
        }
        if self.has_derivative() {
            let f = self.clone();
            out.with_derivative(move |x| Ok(c * f.derivative(x).expect("checked")?))
        } else {
            out
        }
    }
}

fn reduced(x: f64) -> f64 {
    x - x.floor()
}

fn sin_2pi(x: f64) -> f64 {
    (TAU * reduced(x)).sin()
}

fn cos_2pi(x: f64) -> f64 {
    (TAU * reduced(x)).cos()
}
