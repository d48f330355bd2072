//! Heuristic probe for asymptotic flatness, `f(n+x) - f(n) → 0`.
//!
//! For each sample `x` the differences `d_n = |f(n+x) - f(n)|` are taken on
//! the summation schedule and `ln d_n` is fitted against `ln n`. A sample
//! counts as decaying when its fitted exponent is clearly positive and the
//! tail is non-increasing, and as stalled when the exponent is near zero or
//! negative while `d_n` stays above `abs_tol`. This is numerical evidence,
//! not a proof.

use serde::{Deserialize, Serialize};

use super::{EvalFn, SummationConfig};
use crate::{Error, Result};

/// Minimum fitted decay exponent for a decaying sample.
const DECAY_MIN: f64 = 0.05;
/// Maximum fitted decay exponent for a stalled sample.
const STALL_MAX: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatnessVerdict {
    Flat,
    NotFlat,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleDecay {
    pub x: f64,
    pub n: Vec<usize>,
    pub differences: Vec<f64>,
    /// `-slope` of `ln d_n` against `ln n`; `None` when every `d_n` is zero.
    pub decay_exponent: Option<f64>,
    pub verdict: FlatnessVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub verdict: FlatnessVerdict,
    pub samples: Vec<SampleDecay>,
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn classify(x: f64, f: &EvalFn, cfg: &SummationConfig) -> Result<SampleDecay> {
    let n: Vec<usize> = (0..cfg.count).map(|k| cfg.n0 << k).collect();
    let mut differences = Vec::with_capacity(n.len());
    for &m in &n {
        let m = m as f64;
        differences.push((f.eval(m + x)? - f.eval(m)?).norm());
    }
    let tol = cfg.abs_tol;
    if differences.iter().all(|&d| d <= tol) {
        return Ok(SampleDecay {
            x,
            n,
            decay_exponent: None,
            differences,
            verdict: FlatnessVerdict::Flat,
        });
    }
    let points: Vec<(f64, f64)> = n
        .iter()
        .zip(&differences)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&m, &d)| ((m as f64).ln(), d.ln()))
        .collect();
    let decay = if points.len() >= 2 {
        Some(-fit_slope(&points))
    } else {
        None
    };
    let monotone = differences[1..]
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + 1e-12) || w[1] <= tol);
    let floor = differences.iter().cloned().fold(f64::INFINITY, f64::min);
    let verdict = match decay {
        Some(a) if a >= DECAY_MIN && monotone => FlatnessVerdict::Flat,
        Some(a) if a <= STALL_MAX && floor > tol => FlatnessVerdict::NotFlat,
        _ => FlatnessVerdict::Inconclusive,
    };
    Ok(SampleDecay {
        x,
        n,
        differences,
        decay_exponent: decay,
        verdict,
    })
}

/// Classifies `f` on `U⁺` as flat, not flat or inconclusive from its
/// behaviour at the given sample offsets.
pub fn flatness_probe(f: &EvalFn, x_samples: &[f64], cfg: &SummationConfig) -> Result<FlatnessReport> {
    cfg.validate()?;
    if x_samples.is_empty() {
        return Err(Error::Domain("flatness probe needs at least one sample".into()));
    }
    let mut samples = Vec::with_capacity(x_samples.len());
    for &x in x_samples {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("flatness samples must be > 0, got {x}")));
        }
        samples.push(classify(x, f, cfg)?);
    }
    let verdict = if samples.iter().any(|s| s.verdict == FlatnessVerdict::NotFlat) {
        FlatnessVerdict::NotFlat
    } else if samples.iter().all(|s| s.verdict == FlatnessVerdict::Flat) {
        FlatnessVerdict::Flat
    } else {
        FlatnessVerdict::Inconclusive
    };
    Ok(FlatnessReport { verdict, samples })
}
