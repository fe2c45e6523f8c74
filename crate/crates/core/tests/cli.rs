use std::process::Command;

fn fh_lab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fh-lab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn catalog_lists_one_name_per_line() {
    let (code, out, _) = fh_lab(&["catalog"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = out.lines().collect();
    assert!(names.contains(&"hilbert") && names.contains(&"lens") && names.contains(&"lacunary_bloch"));
}

#[test]
fn two_by_two_hilbert_norm() {
    let (code, out, _) = fh_lab(&["norm", "--op", "hilbert-matrix", "--trunc", "2"]);
    assert_eq!(code, 0);
    let v: f64 = out.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    // largest eigenvalue of [[1, 1/2], [1/2, 1/3]]
    assert!((v - (4.0 + 13f64.sqrt()) / 6.0).abs() < 1e-12);
    assert!((v - 1.26759).abs() < 1e-5);
}

#[test]
fn powers_csv_has_one_row_per_exponent() {
    let (code, out, _) = fh_lab(&[
        "powers", "--f", "hilbert", "--phi", "lens", "--trunc", "512", "--n", "1,10,100",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,norm,dominant,tail_bound,headroom");
    assert_eq!(lines.len(), 4);
}

#[test]
fn exit_codes() {
    let (code, _, err) = fh_lab(&["norm", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bogus"));
    let (code, _, err) = fh_lab(&["powers", "--f", "nosuch"]);
    assert_eq!(code, 2);
    assert!(err.contains("nosuch"));
    let (code, _, _) = fh_lab(&["scenario", "nosuch"]);
    assert_eq!(code, 2);
    // the closed-form resolvent refuses 1/lambda this close to the circle
    let (code, _, err) = fh_lab(&["norm", "--op", "resolvent", "--lambda", "1.0000001", "--trunc", "8"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn json_output_carries_the_schema() {
    let (code, out, _) = fh_lab(&[
        "bloch", "--f", "hilbert", "--format", "json", "--shells", "10", "--angles", "8",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "fh-lab/1");
}

#[test]
fn quadrature_checks_run() {
    for check in ["hardy", "carleson", "schwarz", "pairing", "fejer", "weight"] {
        let (code, out, err) = fh_lab(&[
            "quadrature",
            check,
            "--f",
            "poly:1,0.5",
            "--trunc",
            "8",
            "--samples",
            "500",
        ]);
        assert_eq!(code, 0, "{check}: {err}");
        assert_eq!(out.lines().count(), 2, "{check}");
    }
}

#[test]
fn scenario_writes_artifacts_under_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, err) = fh_lab(&["scenario", "kreiss-witness", "--out", out]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("lower witness / hilbert: unbounded"));
    for f in ["witness.csv", "result.json", "summary.txt"] {
        assert!(dir.path().join("kreiss-witness").join(f).exists(), "{f}");
    }
}

#[test]
fn scenario_config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\ntruncations = 16\npowers = 1..10\n").unwrap();
    let out = dir.path().join("out");
    let (code, stdout, err) = fh_lab(&[
        "scenario",
        "peller-dichotomy",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "f=hilbert",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("truncations = 16"));
    let csv = std::fs::read_to_string(out.join("peller-dichotomy").join("powers.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
}
