//! Fractional summation on `U = (-1, ∞)` and the operator `R = Xp + pX`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: complex Hurwitz/Riemann zeta, digamma, log-gamma,
//!   Bernoulli numbers and the Hardy Z function.
//! * [`sum`]: evaluable functions, difference operators, the flatness probe,
//!   the fractional-sum limit engine and the closed-form `x^[-s]` family.
//! * [`operators`]: multiplication by `x`, `p = -i d/dx`, `X = Σ x Δ` and `R`.
//! * [`spectrum`]: eigen-residuals, critical-line zeros, boundary checks,
//!   s-plane scans and the half-shift norm diagnostics.
//! * [`io`]: complex literals and the CSV tables written by the CLI.
//! * [`suites`]: seeded property suites shared by tests and `fracsum verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod io;
pub mod operators;
pub mod spectrum;
pub mod specfun;
pub mod suites;
pub mod sum;

pub use error::{Diagnostic, Error, Level, Result};
pub use num_complex::Complex64;

/// Complex values throughout the crate.
pub type ComplexPoint = Complex64;
