use std::path::Path;
use std::process::{Command, Output};

use fracsum::io::{CsvTable, OutputRecord, SCAN_SCHEMA, ZEROS_SCHEMA};
use serde_json::Value;

const KNOWN_ZEROS: [f64; 13] = [
    14.134_725_141_734_694,
    21.022_039_638_771_555,
    25.010_857_580_145_689,
    30.424_876_125_859_513,
    32.935_061_587_739_19,
    37.586_178_158_825_671,
    40.918_719_012_147_495,
    43.327_073_280_914_999,
    48.005_150_881_167_16,
    49.773_832_477_672_302,
    52.970_321_477_714_461,
    56.446_247_697_063_395,
    59.347_044_002_602_353,
];

fn fracsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracsum"))
        .args(args)
        .env_remove("FRACSUM_STRICT")
        .env_remove("FRACSUM_ABS_TOL")
        .env_remove("FRACSUM_N0")
        .env_remove("FRACSUM_DIFF_STEP")
        .env_remove("FRACSUM_EM_TERMS")
        .env_remove("FRACSUM_FORMAT")
        .env_remove("FRACSUM_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (OutputRecord, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = fracsum(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    (OutputRecord::from_json(&text).expect("valid record"), out.status.code().unwrap())
}

fn value(record: &OutputRecord) -> (f64, f64) {
    let v = &record.results["value"];
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn eval_closed_forms() {
    let (r, code) = json(&["eval", "fracpow", "--x", "1", "--s", "2+0i"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r), (1.0, 0.0));
    let (r, _) = json(&["eval", "sumlog", "--x", "0.5"]);
    assert!((value(&r).0 + 0.120_782_237_6).abs() < 1e-10);
}

#[test]
fn sigma_agrees_with_fracpow() {
    let (limit, code) = json(&["eval", "sigma", "--x", "0.5", "--s", "2+0i"]);
    assert_eq!(code, 0);
    assert_eq!(limit.results["converged"], Value::Bool(true));
    let (closed, _) = json(&["eval", "fracpow", "--x", "0.5", "--s", "2+0i"]);
    let (a, b) = (value(&limit), value(&closed));
    assert!((a.0 - b.0).hypot(a.1 - b.1) < 1e-6);
}

#[test]
fn exit_codes() {
    assert_eq!(fracsum(&["eval", "fracpow", "--x", "-2", "--s", "2"]).status.code(), Some(2));
    assert_eq!(fracsum(&["eval", "fracpow", "--x", "1", "--s", "2 + i"]).status.code(), Some(2));
    assert_eq!(fracsum(&["eval", "fracpow", "--x", "1"]).status.code(), Some(2));
    assert_eq!(fracsum(&["zeros", "0", "101"]).status.code(), Some(2));
    assert_eq!(fracsum(&["norm", "--s", "-1", "--T", "200"]).status.code(), Some(2));
    assert_eq!(fracsum(&["norm", "--s", "2", "--T", "50"]).status.code(), Some(2));
    assert_eq!(fracsum(&["bogus"]).status.code(), Some(2));
    assert_eq!(fracsum(&["eval", "fracpow", "--x", "1", "--s", "2", "--diff-step", "1"]).status.code(), Some(2));

    let slow = ["eval", "sigma", "--x", "7.5", "--s", "0.02+100i", "--abs-tol", "1e-13"];
    let (r, code) = json(&slow);
    assert_eq!(code, 3);
    assert!(r.diagnostics[0].message.starts_with("ConvergenceError"));
    let mut lenient = slow.to_vec();
    lenient.extend(["--strict", "false"]);
    let (r, code) = json(&lenient);
    assert_eq!(code, 0);
    assert_eq!(r.results["converged"], Value::Bool(false));
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn domain_errors_name_their_class() {
    let (r, code) = json(&["eval", "fracpow", "--x", "-2", "--s", "2"]);
    assert_eq!(code, 2);
    assert!(r.diagnostics[0].message.starts_with("DomainError"));
}

#[test]
fn verify_suites() {
    let out = fracsum(&["verify", "lemmas"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = fracsum(&["verify", "operators", "--diff-step", "1e-2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn verify_is_deterministic() {
    let (a, ca) = json(&["verify", "all", "--seed", "7"]);
    let (b, cb) = json(&["verify", "all", "--seed", "7"]);
    assert_eq!((ca, cb), (0, 0));
    assert_eq!(a.canonical_json(), b.canonical_json());
    let table = || fracsum(&["verify", "all", "--seed", "7"]).stdout;
    assert_eq!(table(), table());
}

#[test]
fn zeros_listing() {
    let (r, code) = json(&["zeros", "0", "30"]);
    assert_eq!(code, 0);
    let zeros = r.results["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 3);
    for (z, t) in zeros.iter().zip(KNOWN_ZEROS) {
        assert!((z["t"].as_f64().unwrap() - t).abs() < 1e-8);
        assert_eq!(z["lambda_is_real"], Value::Bool(true));
    }
    let (r, code) = json(&["zeros", "0", "10"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["count"], 0);
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn zeros_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    assert_eq!(fracsum(&["zeros", "0", "60", "--csv", p]).status.code(), Some(0));
    let text = read(&path);
    assert!(text.starts_with("index,t,residual,"));
    assert!(!text.contains('\r'));
    let table = CsvTable::parse(&text, ZEROS_SCHEMA).unwrap();
    assert_eq!(table.rows.len(), KNOWN_ZEROS.len());
    for (row, t) in table.rows.iter().zip(KNOWN_ZEROS) {
        assert!((row[1] - t).abs() < 1e-8);
        assert_eq!(row[10], 1.0);
    }
    // 17 significant digits per float field
    let first = text.lines().nth(1).unwrap();
    let t_field = first.split(',').nth(1).unwrap();
    assert_eq!(t_field.split('e').next().unwrap().replace('.', "").len(), 17);
    assert_eq!(table.to_csv_string(), text);

    let again = dir.path().join("again.csv");
    fracsum(&["zeros", "0", "60", "--csv", again.to_str().unwrap()]);
    assert_eq!(read(&again), text);
}

#[test]
fn scan_csv_is_ordered_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| -> Vec<String> {
        ["scan", "0.1", "0.9", "10", "30", "9", "41", "--csv", p.to_str().unwrap(), "--jobs", "3"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    };
    let run = |p: &Path| {
        let v = args(p);
        fracsum(&v.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(run(&a).status.code(), Some(0));
    assert_eq!(run(&b).status.code(), Some(0));
    assert_eq!(read(&a), read(&b));
    let table = CsvTable::parse(&read(&a), SCAN_SCHEMA).unwrap();
    assert_eq!(table.rows.len(), 9 * 41);
    // im-major: imaginary part never decreases
    assert!(table.rows.windows(2).all(|w| w[0][1] <= w[1][1]));
}

#[test]
fn scan_on_the_line_and_at_the_pole() {
    let (r, code) = json(&["scan", "0.5", "0.5", "0", "5", "1", "11"]);
    assert_eq!(code, 0);
    let cells = r.results["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 11);
    assert!(cells.iter().all(|c| c["lambda"]["im"].as_f64() == Some(0.0)));

    let (r, code) = json(&["scan", "0.5", "1.5", "0", "1", "11", "11"]);
    assert_eq!(code, 0);
    let cells = r.results["cells"].as_array().unwrap();
    let poles: Vec<_> = cells.iter().filter(|c| c["flags"] == serde_json::json!(["pole"])).collect();
    assert_eq!(poles.len(), 1);
    assert_eq!(poles[0]["s"]["re"].as_f64(), Some(1.0));
    assert_eq!(r.results["computed"], 121);
}

#[test]
fn norm_verdicts() {
    for (s, t, expected, verdict) in [
        ("0.75+5i", "400", -1.5, "finite-trend"),
        ("0.25", "400", -0.5, "divergent-trend"),
        ("2", "200", -4.0, "finite-trend"),
    ] {
        let (r, code) = json(&["norm", "--s", s, "--T", t]);
        assert_eq!(code, 0);
        let e = r.results["decay_exponent"].as_f64().unwrap();
        assert!((e - expected).abs() < 0.2, "{s}: {e}");
        assert_eq!(r.results["verdict"], verdict);
    }
}

#[test]
fn flags_override_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fracsum"));
        cmd.args(["eval", "sumlog", "--x", "0.5", "--format", "json"]);
        if let Some(f) = flag {
            cmd.args(["--n0", f]);
        }
        if let Some(e) = env {
            cmd.env("FRACSUM_N0", e);
        }
        let out = cmd.output().unwrap();
        let r = OutputRecord::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
        r.inputs["n0"].as_u64().unwrap()
    };
    assert_eq!(run(None, None), 64);
    assert_eq!(run(Some("128"), None), 128);
    assert_eq!(run(Some("128"), Some("256")), 256);

    let out = Command::new(env!("CARGO_BIN_EXE_fracsum"))
        .args(["eval", "fracpow", "--x", "1", "--s", "2"])
        .env("FRACSUM_FORMAT", "json")
        .output()
        .unwrap();
    assert!(OutputRecord::from_json(&String::from_utf8(out.stdout).unwrap()).is_ok());
}
