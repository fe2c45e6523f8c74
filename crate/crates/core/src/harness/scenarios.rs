//! The registered experiments. Each is a deterministic function of its config.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::table::{num, status, Table};
use super::verdict::{kreiss_verdict, power_verdict, Growth};
use crate::analysis::{
    carleson_box_average, coefficient_inner_product, fejer_riesz_check, hardy_inner_product_quadrature,
    hilbert_pairing_check, luecking_quantity, power_density, schwarz_pick_check, weight_positivity, ArcBox,
    QuadratureSpec,
};
use crate::error::{Error, Result};
use crate::report::{Location, SCHEMA};
use crate::sections::FoguelHankelSpec;
use crate::spectral::{hilbert_kreiss_witness, kreiss_lower_witness, kreiss_scan, power_norm_sequence};
use crate::symbols::catalog::catalog_maps;
use crate::symbols::{resolve_map, resolve_series, PowerSeries, SelfMap};

type C64 = Complex64;

/// Witness growth from the first to the second radius at which the Kreiss witness is called unbounded.
pub const WITNESS_GROWTH: f64 = 5.0;

/// Largest relative variation of `n^{r+1}` times the box average over the sampled `n`.
pub const CARLESON_VARIATION: f64 = 0.20;

/// Largest ratio between the scaled Luecking quantities `n^2 L(n)` over the sampled `n`.
pub const LUECKING_FACTOR: f64 = 2.0;

/// One decision, with the numbers it was derived from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub subject: String,
    pub call: String,
    pub metrics: BTreeMap<String, f64>,
}

impl Verdict {
    fn new(subject: impl Into<String>, call: &str, metrics: &[(&str, f64)]) -> Self {
        Verdict {
            subject: subject.into(),
            call: call.to_string(),
            metrics: metrics.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn pass(subject: impl Into<String>, ok: bool, metrics: &[(&str, f64)]) -> Self {
        Self::new(subject, if ok { "pass" } else { "fail" }, metrics)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    /// Rows tagged with an error status, over all tables.
    pub failures: usize,
    /// Not written to any artifact, so that reruns are byte-identical.
    pub wall_clock_seconds: f64,
    pub artifacts: Vec<PathBuf>,
}

impl ExperimentResult {
    pub fn verdict(&self, subject: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.subject == subject)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// The config as text, without the output directory, which does not affect any value.
    pub fn config_echo(&self) -> String {
        self.config
            .to_text()
            .lines()
            .filter(|l| !l.starts_with("out ="))
            .map(|l| format!("{l}\n"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "schema": SCHEMA,
            "config": self.config_echo(),
            "verdicts": self.verdicts,
            "failures": self.failures,
            "tables": self.tables,
        });
        serde_json::to_string_pretty(&doc).expect("result serializes")
    }

    /// One-page plain-text account of the verdicts.
    pub fn summary(&self) -> String {
        let mut s = format!("scenario: {}\n\n", self.config.scenario);
        s.push_str("verdicts:\n");
        for v in &self.verdicts {
            let metrics = v
                .metrics
                .iter()
                .map(|(k, x)| format!("{k}={}", num(*x)))
                .collect::<Vec<_>>()
                .join(", ");
            s.push_str(&format!("  {}: {} ({metrics})\n", v.subject, v.call));
        }
        s.push_str(&format!("\nrows with errors: {}\n", self.failures));
        for t in &self.tables {
            s.push_str(&format!("table {}: {} rows\n", t.name, t.rows.len()));
        }
        s.push_str("\nconfig:\n");
        for line in self.config_echo().lines() {
            s.push_str(&format!("  {line}\n"));
        }
        s
    }
}

/// Runs the scenario and writes `<out>/<scenario>/{<table>.csv, result.json, summary.txt}`.
pub fn run_scenario(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let mut result = compute_scenario(cfg)?;
    let dir = cfg.out_dir.join(&cfg.scenario);
    std::fs::create_dir_all(&dir)?;
    for t in &result.tables {
        let p = dir.join(format!("{}.csv", t.name));
        std::fs::write(&p, t.to_csv())?;
        result.artifacts.push(p);
    }
    let p = dir.join("result.json");
    std::fs::write(&p, result.to_json())?;
    result.artifacts.push(p);
    let p = dir.join("summary.txt");
    std::fs::write(&p, result.summary())?;
    result.artifacts.push(p);
    Ok(result)
}

/// Runs the scenario without touching the file system.
pub fn compute_scenario(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let start = Instant::now();
    let (tables, verdicts) = match cfg.scenario.as_str() {
        "peller-dichotomy" | "gfh-power-bounded" => power_study(cfg)?,
        "hilbert-foguel-kreiss" => kreiss_study(cfg)?,
        "kreiss-witness" => witness_study(cfg)?,
        "lemma-suite" => lemma_suite(cfg)?,
        other => return Err(Error::Config(format!("unknown scenario `{other}`"))),
    };
    let failures = tables
        .iter()
        .map(|t| {
            t.column("status")
                .map(|i| t.rows.iter().filter(|r| r[i] != "ok").count())
                .unwrap_or(0)
        })
        .sum();
    Ok(ExperimentResult {
        config: cfg.clone(),
        tables,
        verdicts,
        failures,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        artifacts: Vec::new(),
    })
}

fn blank(k: usize) -> Vec<String> {
    vec![String::new(); k]
}

/// `(n, value)` pairs of the ok rows of `table` matching `filter`.
fn series_from(table: &Table, filter: &[(&str, &str)], x: &str, y: &str) -> Vec<(usize, f64)> {
    let cols: Vec<(usize, &str)> = filter
        .iter()
        .map(|(c, v)| (table.column(c).expect("filter column"), *v))
        .collect();
    let (xi, yi) = (table.column(x).expect("x column"), table.column(y).expect("y column"));
    table
        .ok_rows()
        .filter(|r| cols.iter().all(|(i, v)| r[*i] == *v))
        .filter_map(|r| Some((r[xi].parse().ok()?, r[yi].parse().ok()?)))
        .collect()
}

fn power_study(cfg: &ExperimentConfig) -> Result<(Vec<Table>, Vec<Verdict>)> {
    let mut powers = Table::new(
        "powers",
        &[
            "f",
            "phi",
            "truncation",
            "n",
            "norm",
            "dominant",
            "tail_bound",
            "headroom",
            "status",
        ],
    );
    for fname in &cfg.f {
        let f = resolve_series(fname)?;
        for pname in &cfg.phi {
            let phi = resolve_map(pname)?;
            for &n in &cfg.truncations {
                let spec = FoguelHankelSpec::new(f.clone(), phi.clone(), n);
                let key = vec![fname.clone(), pname.clone(), n.to_string()];
                match power_norm_sequence(&spec, &cfg.powers, cfg.tol) {
                    Ok(seq) => {
                        for (i, &(p, v)) in seq.values.iter().enumerate() {
                            let mut row = key.clone();
                            row.extend([
                                p.to_string(),
                                num(v),
                                num(seq.dominant[i]),
                                num(seq.tail_bounds[i]),
                                seq.headrooms[i].to_string(),
                                "ok".into(),
                            ]);
                            powers.push(row);
                        }
                    }
                    Err(e) => {
                        let mut row = key.clone();
                        row.extend(blank(5));
                        row.push(status::<()>(&Err(e)));
                        powers.push(row);
                    }
                }
            }
        }
    }
    let mut convergence = Table::new(
        "convergence",
        &[
            "f",
            "phi",
            "truncation",
            "decade_ratio",
            "slope",
            "sup_range",
            "raw_range",
            "growth",
        ],
    );
    let mut verdicts = Vec::new();
    for fname in &cfg.f {
        for pname in &cfg.phi {
            let mut last = None;
            for &n in &cfg.truncations {
                let ns = n.to_string();
                let values = series_from(
                    &powers,
                    &[("f", fname), ("phi", pname), ("truncation", &ns)],
                    "n",
                    "norm",
                );
                if values.is_empty() {
                    continue;
                }
                let v = power_verdict(&values);
                convergence.push(vec![
                    fname.clone(),
                    pname.clone(),
                    ns,
                    num(v.decade_ratio),
                    num(v.slope),
                    num(v.sup_range),
                    num(v.raw_range),
                    v.growth.label().into(),
                ]);
                last = Some((n, v));
            }
            let subject = format!("{fname} / {pname}");
            verdicts.push(match last {
                Some((n, v)) => Verdict::new(
                    subject,
                    v.growth.label(),
                    &[
                        ("truncation", n as f64),
                        ("decade_ratio", v.decade_ratio),
                        ("slope", v.slope),
                        ("sup_range", v.sup_range),
                        ("raw_range", v.raw_range),
                        ("strictly_increasing", v.strictly_increasing as u8 as f64),
                    ],
                ),
                None => Verdict::new(subject, Growth::Inconclusive.label(), &[]),
            });
        }
    }
    Ok((vec![powers, convergence], verdicts))
}

fn kreiss_study(cfg: &ExperimentConfig) -> Result<(Vec<Table>, Vec<Verdict>)> {
    let mut scans = Table::new(
        "kreiss",
        &[
            "f",
            "phi",
            "truncation",
            "estimate",
            "argmax_re",
            "argmax_im",
            "evaluations",
            "status",
        ],
    );
    let mut verdicts = Vec::new();
    for fname in &cfg.f {
        let f = resolve_series(fname)?;
        for pname in &cfg.phi {
            let phi = resolve_map(pname)?;
            for &n in &cfg.truncations {
                let spec = FoguelHankelSpec::new(f.clone(), phi.clone(), n);
                let mut row = vec![fname.clone(), pname.clone(), n.to_string()];
                let r = kreiss_scan(&spec, &cfg.schedule);
                match &r {
                    Ok(rep) => {
                        let (re, im) = match rep.argmax {
                            Location::Complex { re, im } => (re, im),
                            _ => (f64::NAN, f64::NAN),
                        };
                        row.extend([num(rep.estimate), num(re), num(im), rep.trace.len().to_string()]);
                    }
                    Err(_) => row.extend(blank(4)),
                }
                row.push(status(&r));
                scans.push(row);
            }
            let estimates = series_from(&scans, &[("f", fname), ("phi", pname)], "truncation", "estimate");
            let v = kreiss_verdict(&estimates);
            verdicts.push(Verdict::new(
                format!("{fname} / {pname}"),
                v.call.label(),
                &[("growth", v.growth), ("spread", v.spread)],
            ));
        }
    }
    let witness = witness_sweep(cfg, &mut verdicts)?;
    Ok((vec![scans, witness], verdicts))
}

/// Integral witness over `mu = r e^{i theta}` and `delta = 2^-k`, plus the
/// diagonal `mu = r, delta = 1 - r` where the identity map has an explicit lower bound.
fn witness_sweep(cfg: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<Table> {
    let mut t = Table::new(
        "witness",
        &["phi", "mu_re", "mu_im", "delta", "value", "lower_bound", "status"],
    );
    let radii: Vec<f64> = cfg.radii.iter().copied().filter(|&r| r >= 0.5).collect();
    for pname in &cfg.phi {
        let phi = resolve_map(pname)?;
        let mut sup_by_radius = Vec::new();
        for &r in &radii {
            let mut best = 0.0f64;
            for j in 0..16 {
                let mu = C64::from_polar(r, PI * j as f64 / 8.0);
                for k in 1..=6 {
                    let delta = 0.5f64.powi(k);
                    let w = hilbert_kreiss_witness(&phi, mu, delta);
                    if let Ok(v) = w {
                        best = best.max(v);
                    }
                    t.push(vec![
                        pname.clone(),
                        num(mu.re),
                        num(mu.im),
                        num(delta),
                        w.as_ref().map(|&v| num(v)).unwrap_or_default(),
                        String::new(),
                        status(&w),
                    ]);
                }
            }
            let diag = hilbert_kreiss_witness(&phi, C64::new(r, 0.0), (1.0 - r).min(0.5));
            if let Ok(v) = diag {
                best = best.max(v);
            }
            t.push(vec![
                pname.clone(),
                num(r),
                num(0.0),
                num((1.0 - r).min(0.5)),
                diag.as_ref().map(|&v| num(v)).unwrap_or_default(),
                num(1.0 / (6.0 * (1.0 - r))),
                status(&diag),
            ]);
            sup_by_radius.push(best);
        }
        if let (Some(&a), Some(&b)) = (sup_by_radius.first(), sup_by_radius.last()) {
            let growth = if a > 0.0 { b / a } else { 1.0 };
            let call = if growth >= WITNESS_GROWTH {
                "unbounded"
            } else {
                "bounded"
            };
            verdicts.push(Verdict::new(
                format!("integral witness / {pname}"),
                call,
                &[("growth", growth), ("sup_first_radius", a), ("sup_last_radius", b)],
            ));
        }
    }
    Ok(t)
}

fn witness_study(cfg: &ExperimentConfig) -> Result<(Vec<Table>, Vec<Verdict>)> {
    let mut t = Table::new("witness", &["f", "r", "value", "status"]);
    let mut verdicts = Vec::new();
    for fname in &cfg.f {
        let f = resolve_series(fname)?;
        let mut shells = Vec::new();
        for &r in &cfg.radii {
            let grid: Vec<C64> = (0..16).map(|j| C64::from_polar(r, PI * j as f64 / 8.0)).collect();
            let w = kreiss_lower_witness(&f, &grid).map(|rep| rep.estimate);
            if let Ok(v) = w {
                shells.push((r, v));
            }
            t.push(vec![
                fname.clone(),
                num(r),
                w.as_ref().map(|&v| num(v)).unwrap_or_default(),
                status(&w),
            ]);
        }
        verdicts.push(witness_verdict(fname, &f, &shells)?);
    }
    Ok((vec![t], verdicts))
}

/// Polynomials: the sampled witness stays below 1.05 times `max_{|mu|=1} |g'''|/6`.
/// Other symbols: growth between the radii nearest 0.9 and 0.99.
fn witness_verdict(name: &str, f: &PowerSeries, shells: &[(f64, f64)]) -> Result<Verdict> {
    let sup = shells.iter().map(|s| s.1).fold(0.0, f64::max);
    if f.degree_hint().is_some() {
        let g = f.shifted_up(3);
        let mut edge = 0.0f64;
        for j in 0..4096 {
            edge = edge.max(g.eval(C64::from_polar(1.0, 2.0 * PI * j as f64 / 4096.0), 3)?.norm() / 6.0);
        }
        let ok = sup <= 1.05 * edge;
        return Ok(Verdict::new(
            format!("lower witness / {name}"),
            if ok { "bounded" } else { "inconclusive" },
            &[("sup", sup), ("boundary_max", edge)],
        ));
    }
    let near = |t: f64| {
        shells
            .iter()
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
            .map(|s| s.1)
    };
    let (a, b) = (near(0.9).unwrap_or(0.0), near(0.99).unwrap_or(0.0));
    let growth = if a > 0.0 { b / a } else { 1.0 };
    let call = if growth >= WITNESS_GROWTH {
        "unbounded"
    } else if growth <= 2.0 {
        "bounded"
    } else {
        "inconclusive"
    };
    Ok(Verdict::new(
        format!("lower witness / {name}"),
        call,
        &[("growth", growth), ("sup", sup)],
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> PowerSeries {
    PowerSeries::explicit(
        "random",
        (0..=degree)
            .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect(),
    )
}

fn batch_rng(cfg: &ExperimentConfig, batch: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ batch.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn lemma_suite(cfg: &ExperimentConfig) -> Result<(Vec<Table>, Vec<Verdict>)> {
    let mut tables = Vec::new();
    let mut verdicts = Vec::new();

    // Weighted-area inner product against the coefficient sum.
    let mut t = Table::new(
        "hardy",
        &[
            "index",
            "deg_f",
            "deg_g",
            "quadrature_re",
            "quadrature_im",
            "exact_re",
            "exact_im",
            "error",
            "status",
        ],
    );
    let mut rng = batch_rng(cfg, 1);
    let pairs = (cfg.samples / 10).max(1);
    let hardy_q = QuadratureSpec {
        tol: cfg.quadrature.tol.min(1e-9),
        ..QuadratureSpec::default()
    };
    let mut worst = 0.0f64;
    for i in 0..pairs {
        let (df, dg) = (rng.random_range(0..=16), rng.random_range(0..=16));
        let (f, g) = (random_poly(&mut rng, df), random_poly(&mut rng, dg));
        let exact = coefficient_inner_product(&f, &g)?;
        let q = hardy_inner_product_quadrature(&f, &g, &hardy_q);
        let mut row = vec![i.to_string(), df.to_string(), dg.to_string()];
        match &q {
            Ok(v) => {
                worst = worst.max((v - exact).norm());
                row.extend([
                    num(v.re),
                    num(v.im),
                    num(exact.re),
                    num(exact.im),
                    num((v - exact).norm()),
                ]);
            }
            Err(_) => row.extend(blank(5)),
        }
        row.push(status(&q));
        t.push(row);
    }
    let all_ok = t.ok_rows().count() == pairs;
    verdicts.push(Verdict::pass(
        "inner product identity",
        all_ok && worst <= 1e-6,
        &[("max_error", worst)],
    ));
    tables.push(t);

    let (min_w, positive) = weight_positivity(10_000);
    let mut t = Table::new("weight", &["points", "min_weight"]);
    t.push(vec!["10000".into(), num(min_w)]);
    tables.push(t);
    verdicts.push(Verdict::pass("weight positivity", positive, &[("min_weight", min_w)]));

    // Schwarz-Pick type inequalities.
    let mut t = Table::new(
        "schwarz_pick",
        &[
            "map",
            "order",
            "samples",
            "worst_first",
            "worst_second",
            "worst_first_inverted",
            "status",
        ],
    );
    let samples = cfg.samples * 100;
    let mut worst = f64::INFINITY;
    for phi in catalog_maps() {
        for d in 1..=4 {
            let r = schwarz_pick_check(&phi, d, samples, cfg.seed);
            let mut row = vec![phi.name().to_string(), d.to_string(), samples.to_string()];
            match &r {
                Ok(rep) => {
                    worst = worst.min(rep.worst_first.min(rep.worst_second));
                    row.extend([
                        num(rep.worst_first),
                        num(rep.worst_second),
                        num(rep.worst_first_inverted),
                    ]);
                }
                Err(_) => row.extend(blank(3)),
            }
            row.push(status(&r));
            t.push(row);
        }
    }
    let all_ok = t.ok_rows().count() == t.rows.len();
    verdicts.push(Verdict::pass(
        "schwarz-pick",
        all_ok && worst >= -1e-12,
        &[("worst_slack", worst)],
    ));
    tables.push(t);

    // Power decay over Carleson boxes.
    let (ct, cv) = carleson_batch(cfg)?;
    tables.push(ct);
    verdicts.extend(cv);

    let (lt, lv) = luecking_batch(cfg)?;
    tables.push(lt);
    verdicts.push(lv);

    // Diameter inequality.
    let mut t = Table::new("fejer_riesz", &["index", "lhs", "rhs", "slack"]);
    let mut rng = batch_rng(cfg, 2);
    let mut min_slack = f64::INFINITY;
    for i in 0..cfg.samples {
        let fr = fejer_riesz_check(&random_poly(&mut rng, 16))?;
        min_slack = min_slack.min(fr.slack);
        t.push(vec![i.to_string(), num(fr.lhs), num(fr.rhs), num(fr.slack)]);
    }
    verdicts.push(Verdict::pass(
        "fejer-riesz",
        min_slack >= 0.0,
        &[("min_slack", min_slack)],
    ));
    tables.push(t);

    // Hilbert matrix pairing.
    let n = cfg.truncations[0];
    let mut t = Table::new(
        "pairing",
        &[
            "index",
            "degree",
            "matrix_re",
            "matrix_im",
            "integral_re",
            "integral_im",
            "discrepancy",
            "status",
        ],
    );
    let mut rng = batch_rng(cfg, 3);
    let mut worst = 0.0f64;
    let pq = QuadratureSpec {
        tol: 1e-12,
        ..cfg.quadrature
    };
    for i in 0..(cfg.samples / 100).max(1) {
        let u = random_poly(&mut rng, n - 1);
        let v = random_poly(&mut rng, n - 1);
        let r = hilbert_pairing_check(&u, &v, n, &pq);
        let mut row = vec![i.to_string(), (n - 1).to_string()];
        match &r {
            Ok(p) => {
                worst = worst.max(p.discrepancy);
                row.extend([
                    num(p.matrix.re),
                    num(p.matrix.im),
                    num(p.integral.re),
                    num(p.integral.im),
                    num(p.discrepancy),
                ]);
            }
            Err(_) => row.extend(blank(5)),
        }
        row.push(status(&r));
        t.push(row);
    }
    let all_ok = t.ok_rows().count() == t.rows.len();
    verdicts.push(Verdict::pass(
        "hilbert pairing",
        all_ok && worst <= 1e-8,
        &[("max_discrepancy", worst)],
    ));
    tables.push(t);

    Ok((tables, verdicts))
}

/// `sup_I n^{r+1} avg_I` over arcs of length `2^-k`, `k = 0..=10`, centered at `pi`.
pub fn carleson_sup(phi: &SelfMap, n: usize, r: f64, q: &QuadratureSpec) -> Result<(f64, f64)> {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for arc in ArcBox::dyadic_family(PI, 10) {
        let v = carleson_box_average(phi, n, r, &arc, q)? * (n as f64).powf(r + 1.0);
        if v > best.0 {
            best = (v, arc.length);
        }
    }
    Ok(best)
}

fn carleson_batch(cfg: &ExperimentConfig) -> Result<(Table, Vec<Verdict>)> {
    let mut t = Table::new("carleson", &["phi", "r", "n", "normalized_sup", "arc_length", "status"]);
    let mut verdicts = Vec::new();
    let q = QuadratureSpec {
        tol: cfg.quadrature.tol.max(1e-6),
        ..cfg.quadrature
    };
    for pname in &cfg.phi {
        let phi = resolve_map(pname)?;
        for r in [1.0, 2.0, 3.0] {
            let mut vals = Vec::new();
            for &n in &cfg.powers {
                let s = carleson_sup(&phi, n, r, &q);
                let mut row = vec![pname.clone(), num(r), n.to_string()];
                match &s {
                    Ok((v, len)) => {
                        vals.push(*v);
                        row.extend([num(*v), num(*len)]);
                    }
                    Err(_) => row.extend(blank(2)),
                }
                row.push(status(&s));
                t.push(row);
            }
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let variation = if hi > 0.0 { (hi - lo) / hi } else { f64::INFINITY };
            let ok = vals.len() == cfg.powers.len() && variation <= CARLESON_VARIATION;
            verdicts.push(Verdict::pass(
                format!("carleson decay / {pname} / r={r}"),
                ok,
                &[("variation", variation), ("max", hi), ("min", lo)],
            ));
        }
    }
    Ok((t, verdicts))
}

/// `n^2` times the Luecking quantity of `|psi|^{n-1}(1-|z|)^2|psi'| dm`, `psi = tilde(phi)`
/// with `phi` the first configured map, maximized over arcs `2^-k`, `k = 1..=5`, at `pi`.
fn luecking_batch(cfg: &ExperimentConfig) -> Result<(Table, Verdict)> {
    let mut t = Table::new("luecking", &["psi", "n", "scaled_sup", "arc_length", "status"]);
    let phi = resolve_map(&cfg.phi[0])?;
    let psi = SelfMap::certified(phi.series().tilde(), phi.sup_bound(), phi.sup_bound(), "tilde")?;
    let q = QuadratureSpec {
        radial: 8,
        angular: 16,
        tol: 1e-4,
        ..cfg.quadrature
    };
    let mut vals = Vec::new();
    for n in [16usize, 32, 64] {
        let mut best: Result<(f64, f64)> = Ok((f64::NEG_INFINITY, 0.0));
        for k in 1..=5 {
            let arc = ArcBox::new(PI, 0.5f64.powi(k))?;
            best = best.and_then(|b| {
                let v = luecking_quantity(power_density(&psi, n), 1, &arc, &q)?.value * (n * n) as f64;
                Ok(if v > b.0 { (v, arc.length) } else { b })
            });
        }
        let mut row = vec![cfg.phi[0].clone(), n.to_string()];
        match &best {
            Ok((v, len)) => {
                vals.push(*v);
                row.extend([num(*v), num(*len)]);
            }
            Err(_) => row.extend(blank(2)),
        }
        row.push(status(&best));
        t.push(row);
    }
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let ratio = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    let v = Verdict::pass(
        format!("luecking / {}", cfg.phi[0]),
        vals.len() == 3 && ratio <= LUECKING_FACTOR,
        &[("ratio", ratio), ("max", hi), ("min", lo)],
    );
    Ok((t, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(scenario: &str, extra: &str) -> ExperimentConfig {
        ExperimentConfig::parse(&format!("scenario = {scenario}\n{extra}")).unwrap()
    }

    #[test]
    fn power_study_tables_and_verdicts() {
        let cfg = small("peller-dichotomy", "truncations = 16, 32\npowers = 1..20");
        let r = compute_scenario(&cfg).unwrap();
        let powers = r.table("powers").unwrap();
        assert_eq!(powers.rows.len(), 2 * 2 * 20);
        assert_eq!(r.failures, 0);
        assert_eq!(r.verdicts.len(), 2);
        // verdicts are recomputable from the emitted rows
        let vals = series_from(powers, &[("f", "hilbert"), ("truncation", "32")], "n", "norm");
        let v = power_verdict(&vals);
        assert_eq!(r.verdict("hilbert / identity_map").unwrap().call, v.growth.label());
    }

    #[test]
    fn failing_rows_are_tagged_not_fatal() {
        // A truncation the closed-form cannot handle is not possible here, so
        // force a failing resolvent by a schedule-free witness at tiny radii.
        let cfg = small("kreiss-witness", "radii = 0.1, 0.9, 0.99\nf = hilbert");
        let r = compute_scenario(&cfg).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.table("witness").unwrap().rows.len(), 3);
        let cfg = small(
            "hilbert-foguel-kreiss",
            "truncations = 4\nradii = 0.3\nshells = 1.5\nangles = 4\nrefine_depth = 0",
        );
        let r = compute_scenario(&cfg).unwrap();
        // |mu| = 0.3 is outside the witness domain: no witness rows, no verdict, no abort
        assert_eq!(r.table("witness").unwrap().rows.len(), 0);
        assert_eq!(r.table("kreiss").unwrap().rows.len(), 2);
    }

    #[test]
    fn unknown_scenario_is_a_config_error() {
        assert!(matches!(ExperimentConfig::default_for("nope"), Err(Error::Config(_))));
        let mut cfg = ExperimentConfig::default_for("lemma-suite").unwrap();
        cfg.scenario = "nope".into();
        assert!(matches!(compute_scenario(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn summary_lists_every_verdict() {
        let cfg = small("kreiss-witness", "");
        let r = compute_scenario(&cfg).unwrap();
        let s = r.summary();
        for v in &r.verdicts {
            assert!(s.contains(&v.subject));
        }
        assert_eq!(r.verdict("lower witness / hilbert").unwrap().call, "unbounded");
        assert_eq!(r.verdict("lower witness / lacunary_bloch").unwrap().call, "bounded");
    }
}
