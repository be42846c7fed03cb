#![no_main]

use libfuzzer_sys::fuzz_target;

use deltaspace::MPoly;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        for nvars in [1, 3] {
            if let Ok(poly) = MPoly::parse(text, nvars) {
                // anything that parses must survive a render round trip
                let rendered = poly.render();
                let again = MPoly::parse(&rendered, nvars).expect("rendered text parses");
                assert_eq!(again, poly);
            }
        }
    }
});
