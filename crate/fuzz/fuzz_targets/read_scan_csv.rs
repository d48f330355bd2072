#![no_main]
use fracsum::io::{CsvTable, SCAN_SCHEMA};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = CsvTable::parse(text, SCAN_SCHEMA) {
        let written = table.to_csv_string();
        let reread = CsvTable::parse(&written, SCAN_SCHEMA).expect("own output parses");
        assert_eq!(reread.to_csv_string(), written);
    }
});
