#![no_main]
use fracsum::io::{CsvTable, ZEROS_SCHEMA};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = CsvTable::parse(text, ZEROS_SCHEMA) {
        let written = table.to_csv_string();
        let reread = CsvTable::parse(&written, ZEROS_SCHEMA).expect("own output parses");
        assert_eq!(reread.to_csv_string(), written);
    }
});
