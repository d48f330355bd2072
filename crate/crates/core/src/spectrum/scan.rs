use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::{eigen_report, eigenvalue_of, REALITY_TOL};
use crate::specfun::SpecFunConfig;
use crate::{Error, Result};

/// Cells closer than this to `s = 1` are flagged.
pub const POLE_RADIUS: f64 = 1e-3;
/// Flag bit: cell within [`POLE_RADIUS`] of the pole.
pub const CELL_POLE: u32 = 1;
/// Flag bit: evaluation failed for this cell.
pub const CELL_ERROR: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub s: Complex64,
    pub abs_zeta: Option<f64>,
    pub analytic_residual: Option<f64>,
    pub lambda: Complex64,
    pub lambda_is_real: bool,
    pub flags: u32,
}

fn axis(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::Domain(format!("{name} range [{lo}, {hi}] is invalid")));
    }
    match n {
        0 => Err(Error::Domain(format!("{name} needs at least one point"))),
        1 if lo == hi => Ok(vec![lo]),
        1 => Err(Error::Domain(format!(
            "{name}: a single point needs a degenerate range"
        ))),
        _ => Ok((0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()),
    }
}

fn cell(s: Complex64, cfg: &SpecFunConfig) -> ScanCell {
    let lambda = eigenvalue_of(s);
    let mut flags = 0;
    if (s - 1.0).norm() < POLE_RADIUS {
        flags |= CELL_POLE;
    }
    let (abs_zeta, analytic_residual) = match eigen_report(s, cfg) {
        Ok(r) => (r.zeta_s.map(|z| z.norm()), Some(r.analytic_residual)),
        Err(_) => {
            flags |= CELL_ERROR;
            (None, None)
        }
    };
    ScanCell {
        s,
        abs_zeta,
        analytic_residual,
        lambda,
        lambda_is_real: lambda.im.abs() < REALITY_TOL,
        flags,
    }
}

/// Evaluates the eigenvalue condition on a grid of `s`, ordered with the
/// imaginary part outermost. Cells with `Re(s) <= 0` are omitted; cell
/// failures are flagged rather than aborting the scan.
pub fn scan_s_plane(
    re_range: (f64, f64),
    im_range: (f64, f64),
    n_re: usize,
    n_im: usize,
    cfg: &SpecFunConfig,
) -> Result<Vec<ScanCell>> {
    cfg.validate()?;
    let re = axis(re_range.0, re_range.1, n_re, "re")?;
    let im = axis(im_range.0, im_range.1, n_im, "im")?;
    let points: Vec<Complex64> = im
        .iter()
        .flat_map(|&y| re.iter().filter(|&&x| x > 0.0).map(move |&x| Complex64::new(x, y)))
        .collect();
    Ok(points.par_iter().map(|&s| cell(s, cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contains_two() {
        let cfg = SpecFunConfig::default();
        let cells = scan_s_plane((1.0, 2.0), (0.0, 1.0), 3, 2, &cfg).unwrap();
        assert_eq!(cells.len(), 6);
        let two = cells.iter().find(|c| c.s == Complex64::new(2.0, 0.0)).unwrap();
        assert!((two.analytic_residual.unwrap() - 1.644_934_066_848_226_4).abs() < 1e-12);
        let one = &cells[0];
        assert_eq!(one.s, Complex64::new(1.0, 0.0));
        assert_eq!(one.flags & CELL_POLE, CELL_POLE);
        assert_eq!(one.analytic_residual, Some(1.0));
        // im-major order
        assert_eq!(cells[3].s, Complex64::new(1.0, 1.0));
    }

    #[test]
    fn critical_line_is_real() {
        let cfg = SpecFunConfig::default();
        let cells = scan_s_plane((0.5, 0.5), (0.0, 5.0), 1, 11, &cfg).unwrap();
        assert_eq!(cells.len(), 11);
        assert!(cells.iter().all(|c| c.lambda_is_real && c.lambda.im == 0.0));
    }

    #[test]
    fn drops_left_half_plane() {
        let cfg = SpecFunConfig::default();
        let cells = scan_s_plane((-0.5, 0.5), (1.0, 2.0), 3, 2, &cfg).unwrap();
        assert!(cells.iter().all(|c| c.s.re > 0.0));
        assert_eq!(cells.len(), 2);
        assert!(scan_s_plane((0.5, 0.1), (1.0, 2.0), 3, 2, &cfg).is_err());
        assert!(scan_s_plane((0.1, 0.5), (1.0, 2.0), 1, 2, &cfg).is_err());
    }
}
