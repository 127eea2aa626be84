#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = sepinv_core::parse_point_csv(s) {
            let canon = sepinv_core::parse::format_point_csv(&p);
            let back = sepinv_core::parse_point_csv(&canon).unwrap();
            assert_eq!(back, p);
        }
    }
});
