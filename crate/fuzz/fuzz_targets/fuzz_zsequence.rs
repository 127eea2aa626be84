#![no_main]
use libfuzzer_sys::fuzz_target;
use sepinv_core::GroupSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for spec in [
            GroupSpec::cyclic(4).unwrap(),
            GroupSpec::new(vec![3, 3]).unwrap(),
        ] {
            if let Ok(seq) = sepinv_core::parse_zsequence(s, &spec) {
                let canon = sepinv_core::format_zsequence(&seq, &spec);
                let back = sepinv_core::parse_zsequence(&canon, &spec).unwrap();
                assert_eq!(back, seq);
            }
        }
    }
});
