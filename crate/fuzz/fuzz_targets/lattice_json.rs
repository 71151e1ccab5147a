#![no_main]
use lattice_forge::lattice::FiniteLattice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(l) = FiniteLattice::from_json_str(text) {
            l.check_laws().unwrap();
            assert_eq!(FiniteLattice::from_json_str(&l.to_json_string()).unwrap(), l);
        }
    }
});
