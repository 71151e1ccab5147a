#![no_main]
use lattice_forge::word::parse_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(w) = parse_word(text) {
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
});
