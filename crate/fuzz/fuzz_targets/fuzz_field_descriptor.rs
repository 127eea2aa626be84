#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(field) = sepinv_core::parse_field_descriptor(s) {
            let canon = field.to_string();
            let back = sepinv_core::parse_field_descriptor(&canon).unwrap();
            assert_eq!(back, field);
        }
    }
});
