#![no_main]

use libfuzzer_sys::fuzz_target;

use deltaspace::QMatrix;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = QMatrix::from_json_str(text) {
            // serialization must round-trip
            let json = m.to_json().to_string();
            let again = QMatrix::from_json_str(&json).expect("emitted JSON parses");
            assert_eq!(again.to_json(), m.to_json());
        }
    }
});
