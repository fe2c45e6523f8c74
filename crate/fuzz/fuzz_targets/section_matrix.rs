#![no_main]

use fh_lab::sections::SectionMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = SectionMatrix::from_text(s) {
        let back = SectionMatrix::from_text(&m.to_text()).expect("printed section parses");
        assert_eq!(back.rows(), m.rows());
        assert_eq!(back.cols(), m.cols());
    }
});
