use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fracsum", version, about = "Fractional sums, the operator R and zeta zeros")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Treat non-converged sums as errors.
    #[arg(
        long,
        global = true,
        env = "FRACSUM_STRICT",
        default_value_t = true,
        action = ArgAction::Set,
        num_args = 0..=1,
        default_missing_value = "true",
        value_name = "BOOL"
    )]
    pub strict: bool,
    /// Absolute tolerance of the summation limit.
    #[arg(long, global = true, env = "FRACSUM_ABS_TOL")]
    pub abs_tol: Option<f64>,
    /// First cutoff of the summation schedule.
    #[arg(long, global = true, env = "FRACSUM_N0")]
    pub n0: Option<usize>,
    /// Step of the numeric derivative in p.
    #[arg(long, global = true, env = "FRACSUM_DIFF_STEP")]
    pub diff_step: Option<f64>,
    /// Explicit terms before the Euler-Maclaurin tail.
    #[arg(long, global = true, env = "FRACSUM_EM_TERMS")]
    pub em_terms: Option<usize>,
    #[arg(long, global = true, env = "FRACSUM_FORMAT", value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker thread cap.
    #[arg(long, global = true, env = "FRACSUM_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a fractional sum at one point.
    Eval {
        #[arg(value_enum)]
        expr: EvalExpr,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Exponent, e.g. `2`, `0.5+14.1i`, `-1.5-2i`.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Zeros of zeta on the critical line with their eigen reports.
    Zeros {
        t_min: f64,
        t_max: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also run R numerically on each eigenfunction.
        #[arg(long)]
        numeric: bool,
    },
    /// Eigenvalue condition on a grid in the s-plane.
    #[command(allow_negative_numbers = true)]
    Scan {
        re0: f64,
        re1: f64,
        im0: f64,
        im1: f64,
        n_re: usize,
        n_im: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Truncated half-shift norm of x^[-s].
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long = "T", value_name = "T")]
        t_upper: f64,
        #[arg(long, default_value_t = 4000)]
        quad_points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalExpr {
    Fracpow,
    Sumlog,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Lemmas,
    Operators,
    All,
}
