//! Eigenvalues of `R` under `f(0) = 0` and the critical-line machinery
//! that locates them.

mod boundary;
mod eigen;
mod norm;
mod scan;
mod zeros;

pub use boundary::{boundary_report, BoundaryReport};
pub use eigen::{
    eigen_report, eigen_residual, eigenvalue_of, EigenCandidate, EigenReport, EIGEN_TOL,
    NUMERIC_RESIDUAL_GATE, REALITY_TOL,
};
pub use norm::{half_shift_norm, HalfShiftNorm, NormTrend};
pub use scan::{scan_s_plane, ScanCell, CELL_ERROR, CELL_POLE, POLE_RADIUS};
pub use zeros::{find_critical_zeros, find_critical_zeros_with_step, ZetaZero, DEFAULT_GRID_STEP, MAX_ORDINATE};
