#![no_main]

use fh_lab::harness::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ExperimentConfig::parse(s) {
        let again = ExperimentConfig::parse(&cfg.to_text()).expect("printed config parses");
        assert_eq!(again, cfg);
    }
});
