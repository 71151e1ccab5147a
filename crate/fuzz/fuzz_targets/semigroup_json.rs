#![no_main]
use lattice_forge::semigroup::FiniteSemigroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = FiniteSemigroup::from_json_str(text) {
            assert_eq!(FiniteSemigroup::from_json_str(&s.to_json_string()).unwrap(), s);
        }
    }
});
