#![no_main]

use libfuzzer_sys::fuzz_target;

use deltaspace::rational::{parse_rat, render_rat};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rat(text) {
            let again = parse_rat(&render_rat(&r)).expect("rendered rational parses");
            assert_eq!(again, r);
        }
    }
});
