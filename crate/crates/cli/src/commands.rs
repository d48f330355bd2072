use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use fracsum::io::{format_complex, parse_complex, CsvTable, OutputRecord, SCAN_SCHEMA, ZEROS_SCHEMA};
use fracsum::operators::OperatorConfig;
use fracsum::specfun::SpecFunConfig;
use fracsum::spectrum::{
    eigen_report, eigen_residual, find_critical_zeros, half_shift_norm, scan_s_plane, EigenReport,
    NormTrend, ScanCell, ZetaZero, CELL_ERROR, CELL_POLE, NUMERIC_RESIDUAL_GATE,
};
use fracsum::suites::{run_suite, Suite, DEFAULT_SEED};
use fracsum::sum::{frac_power_with_diagnostics, fractional_sum_limit, sum_log, EvalFn, SummationConfig};
use fracsum::{Complex64, Diagnostic, Error, Result};
use serde_json::{json, Value};

use crate::args::{Command, EvalExpr, GlobalOpts, SuiteArg};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;

/// Share of scan cells that must be computed for a zero exit status.
const SCAN_SUCCESS_SHARE: f64 = 0.9;

pub struct Outcome {
    pub record: OutputRecord,
    pub table: String,
    pub code: u8,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence(_) => EXIT_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn opt_num(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

fn bool_num(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn operator_config(g: &GlobalOpts) -> Result<OperatorConfig> {
    let mut spec = SpecFunConfig::default();
    if let Some(m) = g.em_terms {
        spec.em_terms = m;
    }
    let mut sum = SummationConfig {
        strict: g.strict,
        ..SummationConfig::default()
    };
    if let Some(tol) = g.abs_tol {
        sum.abs_tol = tol;
    }
    if let Some(n0) = g.n0 {
        sum.n0 = n0;
        sum.max_n = sum.max_n.max(n0.saturating_mul(1 << (sum.count - 1)));
    }
    let mut cfg = OperatorConfig {
        sum_cfg: sum,
        spec,
        ..OperatorConfig::default()
    };
    if let Some(h) = g.diff_step {
        cfg.diff_step = h;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config_inputs(record: &mut OutputRecord, cfg: &OperatorConfig) {
    let i = &mut record.inputs;
    i.insert("strict".into(), json!(cfg.sum_cfg.strict));
    i.insert("abs_tol".into(), json!(cfg.sum_cfg.abs_tol));
    i.insert("n0".into(), json!(cfg.sum_cfg.n0));
    i.insert("diff_step".into(), json!(cfg.diff_step));
    i.insert("em_terms".into(), json!(cfg.spec.em_terms));
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Eval { expr, .. } => format!("eval {}", eval_name(*expr)),
        Command::Verify { suite, .. } => format!("verify {}", suite_of(*suite).name()),
        Command::Zeros { .. } => "zeros".into(),
        Command::Scan { .. } => "scan".into(),
        Command::Norm { .. } => "norm".into(),
    }
}

fn eval_name(e: EvalExpr) -> &'static str {
    match e {
        EvalExpr::Fracpow => "fracpow",
        EvalExpr::Sumlog => "sumlog",
        EvalExpr::Sigma => "sigma",
    }
}

trait SuiteName {
    fn name(&self) -> &'static str;
}

impl SuiteName for Suite {
    fn name(&self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Operators => "operators",
            Suite::All => "all",
        }
    }
}

fn suite_of(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::Operators => Suite::Operators,
        SuiteArg::All => Suite::All,
    }
}

/// Runs one subcommand. Failures come back as a record carrying the error
/// class in its diagnostics.
pub fn run(g: &GlobalOpts, cmd: &Command) -> Outcome {
    let mut record = OutputRecord::new(command_name(cmd));
    let result = operator_config(g).and_then(|cfg| {
        config_inputs(&mut record, &cfg);
        match cmd {
            Command::Eval { expr, x, s } => eval(&mut record, &cfg, *expr, *x, s.as_deref()),
            Command::Verify { suite, seed } => verify(&mut record, &cfg, suite_of(*suite), *seed),
            Command::Zeros { t_min, t_max, csv, numeric } => {
                zeros(&mut record, &cfg, *t_min, *t_max, csv.as_deref(), *numeric)
            }
            Command::Scan { re0, re1, im0, im1, n_re, n_im, csv } => scan(
                &mut record,
                &cfg,
                (*re0, *re1),
                (*im0, *im1),
                (*n_re, *n_im),
                csv.as_deref(),
            ),
            Command::Norm { s, t_upper, quad_points } => norm(&mut record, &cfg, s, *t_upper, *quad_points),
        }
    });
    match result {
        Ok((table, code)) => Outcome { record, table, code },
        Err(e) => {
            record
                .diagnostics
                .push(Diagnostic::error(format!("{}: {}", e.class(), e.detail())));
            Outcome {
                record,
                table: String::new(),
                code: exit_code(&e),
            }
        }
    }
}

type CmdResult = Result<(String, u8)>;

fn required_s(s: Option<&str>) -> Result<Complex64> {
    parse_complex(s.ok_or_else(|| Error::Domain("--s is required for this expression".into()))?)
}

fn eval(record: &mut OutputRecord, cfg: &OperatorConfig, expr: EvalExpr, x: f64, s: Option<&str>) -> CmdResult {
    record.inputs.insert("x".into(), json!(x));
    let mut table = String::new();
    match expr {
        EvalExpr::Fracpow => {
            let s = required_s(s)?;
            record.inputs.insert("s".into(), json!(format_complex(s)));
            let (value, diags) = frac_power_with_diagnostics(x, s, &cfg.spec)?;
            record.diagnostics.extend(diags);
            record.results = json!({ "value": cjson(value), "method": "closed_form" });
            writeln!(table, "value      {}", format_complex(value)).unwrap();
            writeln!(table, "method     closed_form").unwrap();
        }
        EvalExpr::Sumlog => {
            let value = sum_log(x)?;
            record.results = json!({ "value": cjson(value), "method": "log_gamma" });
            writeln!(table, "value      {}", format_complex(value)).unwrap();
            writeln!(table, "method     log_gamma").unwrap();
        }
        EvalExpr::Sigma => {
            let s = required_s(s)?;
            record.inputs.insert("s".into(), json!(format_complex(s)));
            let r = fractional_sum_limit(&EvalFn::power(s), x, &cfg.sum_cfg)?;
            if !r.converged {
                record.diagnostics.push(Diagnostic::warning(format!(
                    "limit not converged to {:e}, estimate {:e}",
                    cfg.sum_cfg.abs_tol, r.err_estimate
                )));
            }
            record.results = json!({
                "value": cjson(r.value),
                "method": "limit",
                "err_estimate": r.err_estimate,
                "n_used": r.n_used,
                "converged": r.converged,
                "decay_exponent_estimate": r.decay_exponent_estimate,
            });
            writeln!(table, "value          {}", format_complex(r.value)).unwrap();
            writeln!(table, "err_estimate   {:e}", r.err_estimate).unwrap();
            writeln!(table, "n_used         {}", r.n_used).unwrap();
            writeln!(table, "converged      {}", r.converged).unwrap();
            match r.decay_exponent_estimate {
                Some(p) => writeln!(table, "decay_exponent {p:.6}").unwrap(),
                None => writeln!(table, "decay_exponent -").unwrap(),
            }
        }
    }
    Ok((table, 0))
}

fn verify(record: &mut OutputRecord, cfg: &OperatorConfig, suite: Suite, seed: Option<u64>) -> CmdResult {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    record.inputs.insert("seed".into(), json!(seed));
    let report = run_suite(suite, seed, cfg)?;
    let passed = report.all_passed();
    let mut table = String::new();
    for p in &report.properties {
        writeln!(
            table,
            "{}  {:<30} {:>11.3e} < {:<9.1e} {}",
            if p.passed { "PASS" } else { "FAIL" },
            p.name,
            p.max_defect,
            p.tolerance,
            p.detail
        )
        .unwrap();
    }
    let failed = report.properties.iter().filter(|p| !p.passed).count();
    writeln!(table, "{} properties, {failed} failed", report.properties.len()).unwrap();
    record.results = json!({
        "suite": suite.name(),
        "seed": seed,
        "passed": passed,
        "properties": report.properties,
    });
    if !passed {
        record
            .diagnostics
            .push(Diagnostic::error(format!("{failed} properties outside tolerance")));
    }
    Ok((table, if passed { 0 } else { EXIT_VERIFY }))
}

fn zero_row(z: &ZetaZero, r: &EigenReport) -> Vec<f64> {
    vec![
        z.index as f64,
        z.t,
        z.residual,
        z.bracket.0,
        z.bracket.1,
        r.lambda.re,
        r.lambda.im,
        r.analytic_residual,
        r.boundary_f0.norm(),
        r.boundary_fhalf.norm(),
        bool_num(r.lambda_is_real),
    ]
}

fn write_csv(table: &CsvTable, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
    table.write(BufWriter::new(file))
}

fn zeros(
    record: &mut OutputRecord,
    cfg: &OperatorConfig,
    t_min: f64,
    t_max: f64,
    csv: Option<&Path>,
    numeric: bool,
) -> CmdResult {
    record.inputs.insert("t_min".into(), json!(t_min));
    record.inputs.insert("t_max".into(), json!(t_max));
    record.inputs.insert("numeric".into(), json!(numeric));
    let found = find_critical_zeros(t_min, t_max, &cfg.spec)?;
    // The numeric residual is a diagnostic: shortfalls of the nested limits
    // show up in its value and in a warning, not as a failure.
    let mut lenient = cfg.clone();
    lenient.sum_cfg.strict = false;
    let reports: Vec<EigenReport> = found
        .iter()
        .map(|z| {
            if numeric {
                eigen_residual(z.s(), &lenient)
            } else {
                eigen_report(z.s(), &cfg.spec)
            }
        })
        .collect::<Result<_>>()?;

    let mut csv_table = CsvTable::new(ZEROS_SCHEMA);
    let mut table = String::new();
    writeln!(
        table,
        "{:>5} {:>20} {:>10} {:>22} {:>10} {:>10} {:>10} {:>5}",
        "index", "t", "|zeta|", "lambda", "residual", "|f(0)|", "|f(-1/2)|", "real"
    )
    .unwrap();
    let mut rows = Vec::with_capacity(found.len());
    for (z, r) in found.iter().zip(&reports) {
        csv_table.push(zero_row(z, r))?;
        writeln!(
            table,
            "{:>5} {:>20.15} {:>10.2e} {:>22} {:>10.2e} {:>10.2e} {:>10.2e} {:>5}",
            z.index,
            z.t,
            z.residual,
            format!("{:.12}", r.lambda.re),
            r.analytic_residual,
            r.boundary_f0.norm(),
            r.boundary_fhalf.norm(),
            r.lambda_is_real
        )
        .unwrap();
        if let Some(nr) = r.numeric_residual {
            if nr >= NUMERIC_RESIDUAL_GATE {
                record.diagnostics.push(Diagnostic::warning(format!(
                    "zero {}: numeric residual {nr:.3e} above {NUMERIC_RESIDUAL_GATE:e}",
                    z.index
                )));
            }
        }
        rows.push(json!({
            "index": z.index,
            "t": z.t,
            "residual": z.residual,
            "bracket": [z.bracket.0, z.bracket.1],
            "lambda": cjson(r.lambda),
            "analytic_residual": r.analytic_residual,
            "numeric_residual": r.numeric_residual,
            "boundary_f0": cjson(r.boundary_f0),
            "boundary_fhalf": cjson(r.boundary_fhalf),
            "is_eigen": r.is_eigen,
            "lambda_is_real": r.lambda_is_real,
        }));
    }
    writeln!(table, "{} zeros in [{t_min}, {t_max}]", found.len()).unwrap();
    if let Some(path) = csv {
        write_csv(&csv_table, path)?;
        record.inputs.insert("csv".into(), json!(path.display().to_string()));
    }
    record.results = json!({ "count": found.len(), "zeros": rows });
    Ok((table, 0))
}

fn scan_row(c: &ScanCell) -> Vec<f64> {
    vec![
        c.s.re,
        c.s.im,
        opt_num(c.abs_zeta),
        opt_num(c.analytic_residual),
        c.lambda.re,
        c.lambda.im,
        bool_num(c.lambda_is_real),
        c.flags as f64,
    ]
}

fn flag_names(flags: u32) -> Vec<&'static str> {
    let mut v = Vec::new();
    if flags & CELL_POLE != 0 {
        v.push("pole");
    }
    if flags & CELL_ERROR != 0 {
        v.push("error");
    }
    v
}

fn scan(
    record: &mut OutputRecord,
    cfg: &OperatorConfig,
    re: (f64, f64),
    im: (f64, f64),
    n: (usize, usize),
    csv: Option<&Path>,
) -> CmdResult {
    record.inputs.insert("re_range".into(), json!([re.0, re.1]));
    record.inputs.insert("im_range".into(), json!([im.0, im.1]));
    record.inputs.insert("n_re".into(), json!(n.0));
    record.inputs.insert("n_im".into(), json!(n.1));
    let cells = scan_s_plane(re, im, n.0, n.1, &cfg.spec)?;
    if cells.is_empty() {
        return Err(Error::Domain("no cells with Re(s) > 0 in the scan range".into()));
    }
    let mut csv_table = CsvTable::new(SCAN_SCHEMA);
    let mut table = String::new();
    writeln!(
        table,
        "{:>10} {:>12} {:>12} {:>12} {:>14} {:>5} flags",
        "re", "im", "|zeta|", "residual", "lambda_im", "real"
    )
    .unwrap();
    let mut json_cells = Vec::with_capacity(cells.len());
    for c in &cells {
        csv_table.push(scan_row(c))?;
        let num = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4e}"));
        writeln!(
            table,
            "{:>10.6} {:>12.6} {:>12} {:>12} {:>14.6} {:>5} {}",
            c.s.re,
            c.s.im,
            num(c.abs_zeta),
            num(c.analytic_residual),
            c.lambda.im,
            c.lambda_is_real,
            flag_names(c.flags).join(",")
        )
        .unwrap();
        json_cells.push(json!({
            "s": cjson(c.s),
            "abs_zeta": c.abs_zeta,
            "analytic_residual": c.analytic_residual,
            "lambda": cjson(c.lambda),
            "lambda_is_real": c.lambda_is_real,
            "flags": flag_names(c.flags),
        }));
    }
    let computed = cells.iter().filter(|c| c.flags & CELL_ERROR == 0).count();
    let share = computed as f64 / cells.len() as f64;
    writeln!(table, "{computed}/{} cells computed", cells.len()).unwrap();
    if let Some(path) = csv {
        write_csv(&csv_table, path)?;
        record.inputs.insert("csv".into(), json!(path.display().to_string()));
    }
    let code = if share >= SCAN_SUCCESS_SHARE {
        0
    } else {
        record.diagnostics.push(Diagnostic::error(format!(
            "only {computed} of {} cells computed",
            cells.len()
        )));
        EXIT_CONVERGENCE
    };
    for c in cells.iter().filter(|c| c.flags & CELL_POLE != 0) {
        record
            .diagnostics
            .push(Diagnostic::info(format!("cell s = {} flagged pole", format_complex(c.s))));
    }
    record.results = json!({ "cells": json_cells, "computed": computed, "total": cells.len() });
    Ok((table, code))
}

fn norm(record: &mut OutputRecord, cfg: &OperatorConfig, s: &str, t_upper: f64, quad_points: usize) -> CmdResult {
    let s = parse_complex(s)?;
    record.inputs.insert("s".into(), json!(format_complex(s)));
    record.inputs.insert("T".into(), json!(t_upper));
    record.inputs.insert("quad_points".into(), json!(quad_points));
    let r = half_shift_norm(s, t_upper, quad_points, &cfg.spec)?;
    let verdict = match r.trend {
        NormTrend::Finite => "finite-trend",
        NormTrend::Divergent => "divergent-trend",
    };
    // A square-integrable tail needs an exponent below -1, i.e. Re(s) > 1/2.
    let fitted_finite = r.decay_exponent < -1.0;
    if fitted_finite != (r.trend == NormTrend::Finite) {
        record.diagnostics.push(Diagnostic::warning(format!(
            "fitted exponent {:.4} disagrees with the tail increments",
            r.decay_exponent
        )));
    }
    record.results = json!({
        "truncated_norm_sq": r.truncated_norm_sq,
        "decay_exponent": r.decay_exponent,
        "expected_exponent": -2.0 * s.re,
        "increment_before": r.increment_before,
        "increment_after": r.increment_after,
        "tail_ratio": r.tail_ratio,
        "verdict": verdict,
    });
    let mut table = String::new();
    writeln!(table, "truncated_norm_sq  {:.15e}", r.truncated_norm_sq).unwrap();
    writeln!(table, "decay_exponent     {:.6}", r.decay_exponent).unwrap();
    writeln!(table, "expected_exponent  {:.6}", -2.0 * s.re).unwrap();
    writeln!(table, "tail_ratio         {:.6}", r.tail_ratio).unwrap();
    writeln!(table, "verdict            {verdict}").unwrap();
    Ok((table, 0))
}
