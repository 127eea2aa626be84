#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(spec) = sepinv_core::parse_group_spec(s) {
            // accepted specs round-trip through the canonical string form
            let canon = sepinv_core::parse::group_to_string(&spec);
            let back = sepinv_core::parse_group_spec(&canon).unwrap();
            assert_eq!(back, spec);
        }
    }
});
