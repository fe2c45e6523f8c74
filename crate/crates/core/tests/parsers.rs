//! The fuzz properties, replayed on the checked-in corpus and on random strings.

use std::path::Path;

use fh_lab::harness::ExperimentConfig;
use fh_lab::sections::SectionMatrix;
use fh_lab::symbols::resolve;
use fh_lab::text::{format_complex, parse_complex, parse_f64_list, parse_usize_list};
use proptest::prelude::*;

fn complex_round_trips(s: &str) {
    if let Ok(z) = parse_complex(s) {
        if z.re.is_finite() && z.im.is_finite() {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z, "{s:?}");
        }
    }
}

fn config_round_trips(s: &str) {
    if let Ok(cfg) = ExperimentConfig::parse(s) {
        assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg, "{s:?}");
    }
}

fn section_round_trips(s: &str) {
    if let Ok(m) = SectionMatrix::from_text(s) {
        let back = SectionMatrix::from_text(&m.to_text()).unwrap();
        assert_eq!(back.entries(), m.entries());
    }
}

fn corpus(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_seeds_parse() {
    for s in corpus("parse_complex") {
        assert!(parse_complex(&s).is_ok(), "{s:?}");
        complex_round_trips(&s);
    }
    for s in corpus("parse_lists") {
        assert!(parse_f64_list(&s).is_ok() || parse_usize_list(&s).is_ok(), "{s:?}");
    }
    for s in corpus("experiment_config") {
        assert!(ExperimentConfig::parse(&s).is_ok(), "{s:?}");
        config_round_trips(&s);
    }
    for s in corpus("section_matrix") {
        assert!(SectionMatrix::from_text(&s).is_ok(), "{s:?}");
        section_round_trips(&s);
    }
    for s in corpus("catalog_name") {
        assert!(resolve(&s).is_ok(), "{s:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn complex_parser_total(s in "[-+0-9.eEjinfa ]{0,16}") {
        complex_round_trips(&s);
    }

    #[test]
    fn list_parsers_total(s in "[0-9.,:e -]{0,24}") {
        let _ = parse_f64_list(&s);
        if let Ok(v) = parse_usize_list(&s) {
            prop_assert!(!v.is_empty());
        }
    }

    #[test]
    fn config_parser_total(
        key in prop::sample::select(vec![
            "scenario", "f", "phi", "truncations", "powers", "shells", "angles", "refine_depth", "kreiss_tol",
            "radial_nodes", "angular_nodes", "quad_tol", "quad_refinements", "quad_scheme", "radii", "samples",
            "seed", "tol", "out", "bogus",
        ]),
        value in "[a-z0-9.,;:_ -]{0,16}",
    ) {
        config_round_trips(&format!("scenario = kreiss-witness\n{key} = {value}\n"));
    }

    #[test]
    fn section_parser_total(body in "[0-9.,+j\n-]{0,40}", rows in 0usize..4) {
        let text = format!(
            "{{\"schema\":\"fh-lab/1\",\"rows\":{rows},\"cols\":{rows},\"truncation\":{rows},\"headroom\":{rows},\"structure\":\"general\",\"tail_bound\":0.0}}\n{body}"
        );
        section_round_trips(&text);
    }

    #[test]
    fn catalog_resolver_total(s in "[a-z_:0-9.,+j-]{0,24}") {
        let _ = resolve(&s);
    }
}

#[test]
fn non_finite_values_are_rejected() {
    for kv in [
        "tol = nan",
        "kreiss_tol = nan",
        "quad_tol = inf",
        "radii = nan",
        "shells = inf",
    ] {
        let text = format!("scenario = kreiss-witness\n{kv}\n");
        assert!(ExperimentConfig::parse(&text).is_err(), "{kv}");
    }
}
