#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = sepinv_core::parse_rational(s) {
            let canon = sepinv_core::rational::format_rational(&q);
            let back = sepinv_core::parse_rational(&canon).unwrap();
            assert_eq!(back, q);
        }
    }
});
