#![no_main]
use fracsum::io::OutputRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(record) = OutputRecord::from_json(text) {
        let again = OutputRecord::from_json(&record.to_json()).expect("own output parses");
        assert_eq!(again.to_json(), record.to_json());
    }
});
