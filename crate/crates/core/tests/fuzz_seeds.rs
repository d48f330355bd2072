//! Replays the checked-in fuzz corpora through the decoders with the same
//! invariants the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use fracsum::io::{format_complex, parse_complex, CsvTable, OutputRecord, TableSchema, SCAN_SCHEMA, ZEROS_SCHEMA};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn complex_literals() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_complex") {
        if let Ok(z) = parse_complex(&text) {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
    assert!(parse_complex("1+-2i").is_err());
}

fn csv_seeds(target: &str, schema: TableSchema) -> usize {
    let mut ok = 0;
    for (name, text) in seeds(target) {
        if let Ok(table) = CsvTable::parse(&text, schema) {
            let written = table.to_csv_string();
            assert_eq!(written, text, "{name}");
            ok += 1;
        }
    }
    ok
}

#[test]
fn csv_tables() {
    assert_eq!(csv_seeds("read_scan_csv", SCAN_SCHEMA), 2);
    assert_eq!(csv_seeds("read_zeros_csv", ZEROS_SCHEMA), 2);
}

#[test]
fn output_records() {
    let mut ok = 0;
    for (name, text) in seeds("parse_output_record") {
        if let Ok(r) = OutputRecord::from_json(&text) {
            assert_eq!(OutputRecord::from_json(&r.to_json()).unwrap(), r, "{name}");
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}
