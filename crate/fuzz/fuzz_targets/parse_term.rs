#![no_main]
use lattice_forge::deduction::Term;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(t) = Term::parse(text) {
            assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
        }
    }
});
