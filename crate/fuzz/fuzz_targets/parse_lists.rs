#![no_main]

use fh_lab::text::{parse_f64_list, parse_usize_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_f64_list(s);
    if let Ok(v) = parse_usize_list(s) {
        assert!(!v.is_empty());
    }
});
