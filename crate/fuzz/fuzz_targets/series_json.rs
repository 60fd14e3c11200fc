#![no_main]

use ising_exact::series::{series_from_json, series_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = series_from_json(text) {
        let again = series_from_json(&series_to_json(&s)).expect("own output parses");
        assert_eq!(again, s);
    }
});
