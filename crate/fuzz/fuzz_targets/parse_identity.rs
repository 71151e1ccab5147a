#![no_main]
use lattice_forge::word::parse_identity;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(id) = parse_identity(text) {
            assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
        }
    }
});
