use std::f64::consts::PI;

use num_complex::Complex64;

use super::{bernoulli_over_factorial, check_finite, SpecFunConfig};
use crate::{Error, Result};

/// The tail attachment point may be pushed out this many times (doubling)
/// when the remainder bound misses the tolerance.
const MAX_BASE_DOUBLINGS: u32 = 4;

/// `a^(-s)` for real `a > 0`.
#[inline]
pub(crate) fn real_pow_neg(a: f64, s: Complex64) -> Complex64 {
    (-s * a.ln()).exp()
}

struct Tail {
    value: Complex64,
    remainder: f64,
    magnitude: f64,
}

/// Euler–Maclaurin tail `Σ_{k≥0} (b+k)^(-s)` attached at `b`.
fn em_tail(s: Complex64, b: f64, cfg: &SpecFunConfig) -> Tail {
    let m = cfg.em_bernoulli_order / 2;
    let b_neg_s = real_pow_neg(b, s);
    let mut value = b_neg_s * b / (s - 1.0) + b_neg_s * 0.5;
    let mut magnitude = value.norm();
    // (s)_{2j-1} b^(-s-2j+1), starting at j = 1.
    let mut rising = s;
    let mut power = b_neg_s / b;
    for j in 1..=m {
        let coeff = bernoulli_over_factorial(2 * j).expect("index checked by config");
        let term = rising * power * coeff;
        value += term;
        magnitude += term.norm();
        let k = (2 * j) as f64;
        rising *= (s + (k - 1.0)) * (s + k);
        power /= b * b;
    }
    // |R| ≤ 4 |(s)_{2M}| / (2π)^{2M} · b^{1-σ-2M} / (σ + 2M - 1)
    let two_m = (2 * m) as f64;
    let mut rising_2m = 1.0f64;
    for k in 0..2 * m {
        rising_2m *= (s + k as f64).norm();
    }
    let log_bound = (4.0 * rising_2m).ln() - two_m * (2.0 * PI).ln()
        + (1.0 - s.re - two_m) * b.ln()
        - (s.re + two_m - 1.0).ln();
    Tail {
        value,
        remainder: log_bound.exp(),
        magnitude,
    }
}

/// Hurwitz zeta `ζ(s, a)` with an absolute error estimate.
///
/// The estimate is the Euler–Maclaurin remainder bound plus a rounding
/// allowance proportional to the summed term magnitudes.
pub fn hurwitz_zeta_with_error(
    s: Complex64,
    a: f64,
    cfg: &SpecFunConfig,
) -> Result<(Complex64, f64)> {
    cfg.validate()?;
    check_finite(s, "s")?;
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("zeta pole at s = 1".into()));
    }
    let min_re = 1.0 - cfg.em_bernoulli_order as f64;
    if s.re <= min_re {
        return Err(Error::Domain(format!(
            "Re(s) = {} outside the Euler-Maclaurin range Re(s) > {min_re}",
            s.re
        )));
    }

    let mut base_target = cfg.em_terms as f64;
    let mut explicit = Complex64::new(0.0, 0.0);
    let mut explicit_mag = 0.0;
    let mut k = 0usize;
    for _ in 0..=MAX_BASE_DOUBLINGS {
        while a + (k as f64) < base_target {
            let t = real_pow_neg(a + k as f64, s);
            explicit += t;
            explicit_mag += t.norm();
            k += 1;
        }
        let tail = em_tail(s, a + k as f64, cfg);
        if tail.remainder <= cfg.target_abs_tol {
            let value = explicit + tail.value;
            let rounding = 8.0 * f64::EPSILON * (explicit_mag + tail.magnitude);
            check_finite(value, "zeta value")?;
            return Ok((value, tail.remainder + rounding));
        }
        base_target = 2.0 * (a + k as f64).max(base_target);
    }
    Err(Error::Convergence(format!(
        "Euler-Maclaurin remainder above {:e} for s = {s}, a = {a}",
        cfg.target_abs_tol
    )))
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k+a)^(-s)`, analytically continued in `s`.
pub fn hurwitz_zeta(s: Complex64, a: f64, cfg: &SpecFunConfig) -> Result<Complex64> {
    hurwitz_zeta_with_error(s, a, cfg).map(|(v, _)| v)
}

pub fn riemann_zeta_with_error(s: Complex64, cfg: &SpecFunConfig) -> Result<(Complex64, f64)> {
    hurwitz_zeta_with_error(s, 1.0, cfg)
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(s: Complex64, cfg: &SpecFunConfig) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct partial sum to 10^7 plus the Euler-Maclaurin integral tail of
    /// order one, an oracle independent of the Bernoulli corrections.
    fn zeta2_oracle() -> f64 {
        let n = 10_000_000u64;
        let mut acc = 0.0f64;
        for k in (1..=n).rev() {
            let k = k as f64;
            acc += 1.0 / (k * k);
        }
        let n = n as f64;
        acc + 1.0 / n - 0.5 / (n * n)
    }

    #[test]
    fn zeta_two() {
        let cfg = SpecFunConfig::default();
        let oracle = zeta2_oracle();
        let v = riemann_zeta(c(2.0, 0.0), &cfg).unwrap();
        assert!((v.re - oracle).abs() < 1e-12, "{v} vs {oracle}");
        assert!((v.re - 1.644_934_066_848_226_4).abs() < 1e-13);
        assert!(v.im.abs() < 1e-15);
        let shifted = hurwitz_zeta(c(2.0, 0.0), 2.0, &cfg).unwrap();
        assert!((shifted.re - 0.644_934_066_848_226_4).abs() < 1e-13);
    }

    #[test]
    fn zeta_zero_and_half() {
        let cfg = SpecFunConfig::default();
        let z0 = riemann_zeta(c(0.0, 0.0), &cfg).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-13 && z0.im.abs() < 1e-15);
        let zh = riemann_zeta(c(0.5, 0.0), &cfg).unwrap();
        assert!((zh.re + 1.460_354_508_809_586_8).abs() < 1e-12);
    }

    #[test]
    fn zeta_negative_integers() {
        // ζ(-1) = -1/12, ζ(-3) = 1/120, ζ(-2) = 0
        let cfg = SpecFunConfig::default();
        assert!((riemann_zeta(c(-1.0, 0.0), &cfg).unwrap().re + 1.0 / 12.0).abs() < 1e-12);
        // Explicit terms k^3 cancel to 1/120; the rounding allowance covers it.
        let (v, err) = riemann_zeta_with_error(c(-3.0, 0.0), &cfg).unwrap();
        assert!((v.re - 1.0 / 120.0).abs() <= err && err < 1e-8, "{v} {err}");
        let (v, err) = riemann_zeta_with_error(c(-2.0, 0.0), &cfg).unwrap();
        assert!(v.norm() <= err && err < 1e-9, "{v} {err}");
    }

    #[test]
    fn first_zero_is_small() {
        let cfg = SpecFunConfig::default();
        let z = riemann_zeta(c(0.5, 14.134_725_141_734_693), &cfg).unwrap();
        assert!(z.norm() < 1e-8, "{z}");
    }

    #[test]
    fn high_ordinate_still_converges() {
        let cfg = SpecFunConfig::default();
        let (v, err) = riemann_zeta_with_error(c(0.5, 100.0), &cfg).unwrap();
        assert!(err < 1e-11, "{v} {err}");
    }

    #[test]
    fn errors() {
        let cfg = SpecFunConfig::default();
        assert!(matches!(riemann_zeta(c(1.0, 0.0), &cfg), Err(Error::Pole(_))));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 0.0, &cfg), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), -1.0, &cfg), Err(Error::Domain(_))));
        assert!(matches!(riemann_zeta(c(-40.0, 0.0), &cfg), Err(Error::Domain(_))));
        let bad = SpecFunConfig { em_terms: 5, ..cfg };
        assert!(riemann_zeta(c(2.0, 0.0), &bad).is_err());
        let tight = SpecFunConfig {
            target_abs_tol: 1e-300,
            ..cfg
        };
        assert!(matches!(
            riemann_zeta(c(0.5, 90.0), &tight),
            Err(Error::Convergence(_))
        ));
    }
}
