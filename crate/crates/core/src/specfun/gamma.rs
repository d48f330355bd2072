use std::f64::consts::PI;

use num_complex::Complex64;

use super::{bernoulli_number, check_finite};
use crate::{Error, Result};

/// Recurrences shift the argument until `Re(z)` exceeds this.
const SHIFT_THRESHOLD: f64 = 10.0;
/// Asymptotic terms `B_{2k}`, `k = 1..=ASYMPTOTIC_TERMS`.
const ASYMPTOTIC_TERMS: usize = 10;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Digamma `Ψ(z) = Γ'(z)/Γ(z)`.
///
/// Upward recurrence `Ψ(z) = Ψ(z+1) - 1/z` until `Re(z) > 10`, then the
/// asymptotic series `ln w - 1/(2w) - Σ B_{2k} / (2k w^{2k})`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "z")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma pole at z = {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re <= SHIFT_THRESHOLD {
        shift -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for k in 1..=ASYMPTOTIC_TERMS {
        let b = bernoulli_number(2 * k).expect("table index");
        series += p * (b / (2 * k) as f64);
        p *= inv2;
    }
    let value = w.ln() - inv * 0.5 - series + shift;
    check_finite(value, "digamma")?;
    Ok(value)
}

/// Principal branch of `ln Γ(z)` for `Re(z) > 0`.
///
/// The branch is the one continuous from the positive real axis; it obeys
/// `ln Γ(z+1) = ln Γ(z) + ln z` with the principal logarithm.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "z")?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!(
            "log_gamma implemented for Re(z) > 0, got {z}"
        )));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re <= SHIFT_THRESHOLD {
        shift -= w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for k in 1..=ASYMPTOTIC_TERMS {
        let b = bernoulli_number(2 * k).expect("table index");
        let kk = (2 * k) as f64;
        series += p * (b / (kk * (kk - 1.0)));
        p *= inv2;
    }
    let value = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series + shift;
    check_finite(value, "log_gamma")?;
    Ok(value)
}
