#![no_main]

use fh_lab::symbols::resolve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() <= 256 {
        let _ = resolve(s);
    }
});
