//! Fractional summation.
//!
//! Functions on `U = (-1, ∞)` carry `domain_lo = -1`, functions on
//! `U⁺ = (0, ∞)` carry `domain_lo = 0`. [`forward_difference`] maps the
//! former to the latter and [`fractional_sum_limit`] maps back.

mod difference;
mod evalfn;
mod flatness;
mod limit;
mod power;

pub use difference::{forward_difference, half_difference};
pub use evalfn::EvalFn;
pub use flatness::{flatness_probe, FlatnessReport, FlatnessVerdict, SampleDecay};
pub use limit::{fractional_sum_limit, Acceleration, FracSumResult, SummationConfig};
pub use power::{
    frac_power, frac_power_derivative, frac_power_fn, frac_power_with_diagnostics, sum_log,
    S_ONE_BRANCH_RADIUS, S_ONE_WARNING_RADIUS,
};

/// Left endpoint of `U`.
pub const U_LO: f64 = -1.0;
/// Left endpoint of `U⁺`.
pub const U_PLUS_LO: f64 = 0.0;
