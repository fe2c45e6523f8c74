//! `fh-lab` command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use super::config::ExperimentConfig;
use super::scenarios::run_scenario;
use super::table::num;
use crate::analysis::bloch_norm_estimate;
use crate::analysis::{
    carleson_box_average, coefficient_inner_product, fejer_riesz_check, hardy_inner_product_quadrature,
    hilbert_pairing_check, luecking_quantity, power_density, schwarz_pick_check, weight_positivity, ArcBox,
    QuadratureSpec, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::report::SCHEMA;
use crate::sections::{foguel_hankel, hilbert_matrix, power_closed_form, FoguelHankelSpec};
use crate::spectral::{
    hilbert_kreiss_witness, kreiss_lower_witness, kreiss_scan, power_norm_sequence, resolvent_norm, spectral_norm,
    KreissSchedule,
};
use crate::symbols::{catalog, resolve_map, resolve_series, CatalogEntry, SelfMap};
use crate::text::{format_complex, parse_complex, parse_f64_list, parse_usize_list};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fh-lab", version, about = "Numerical laboratory for Foguel-Hankel operators")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Section size N.
    #[arg(long, global = true, default_value_t = 256)]
    pub trunc: usize,
    /// Inner dimension for products; defaults to what each operation needs.
    #[arg(long, global = true)]
    pub headroom: Option<usize>,
    /// Output file, or output directory for `scenario`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    HilbertMatrix,
    FoguelHankel,
    Power,
    Resolvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Hardy,
    Carleson,
    Schwarz,
    Pairing,
    Fejer,
    Luecking,
    Weight,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the named symbols and self-maps.
    Catalog,
    /// Operator norm of a section.
    Norm {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long, default_value = "identity_map")]
        phi: String,
        /// Exponent for `--op power`.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Spectral parameter for `--op resolvent`, as `re+imj`.
        #[arg(long, default_value = "1.1")]
        lambda: String,
    },
    /// Norms of powers `||Gamma^n||`.
    Powers {
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long, default_value = "identity_map")]
        phi: String,
        /// Exponents, e.g. `1..100:10` or `1,2,4`.
        #[arg(long, default_value = "10..100:10")]
        n: String,
    },
    /// Section Kreiss constant `sup (|lambda| - 1) ||(lambda - Gamma)^-1||`.
    Kreiss {
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long, default_value = "identity_map")]
        phi: String,
        /// Moduli `|lambda|`, all greater than one.
        #[arg(long)]
        shells: Option<String>,
        #[arg(long, default_value_t = 32)]
        angles: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// `(1 - |z|^2)|f''(z)|` on shells clustering at the circle.
    Bloch {
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long, default_value_t = 0.999)]
        r_max: f64,
        #[arg(long, default_value_t = 16)]
        shells: usize,
        #[arg(long, default_value_t = 64)]
        angles: usize,
    },
    /// Lower witness for `f`, or the integral witness for `phi` when `--phi` is given.
    Witness {
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, default_value = "0.9,0.99,0.999")]
        radii: String,
        /// Integral witness parameter `delta`; defaults to `1 - r`.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Single checks of the analytic inequalities.
    Quadrature {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, default_value = "hilbert")]
        f: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, default_value = "lens")]
        phi: String,
        /// Power `n` for Carleson and Luecking.
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Exponent `r` for Carleson.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        arc_center: f64,
        #[arg(long, default_value_t = 0.25)]
        arc_length: f64,
        /// Derivative order for Schwarz-Pick and Luecking.
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 16)]
        radial: usize,
        #[arg(long, default_value_t = 64)]
        angular: usize,
    },
    /// Run a registered scenario and write its artifacts.
    Scenario {
        name: String,
        /// `key = value` file; its `scenario` line, if any, must match NAME.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Extra `key=value` overrides, applied last.
        #[arg(long = "set")]
        overrides: Vec<String>,
    },
}

/// 0 on success, 2 for usage and input errors, 1 for numerical failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

/// Parses `std::env::args`, runs, prints, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(text) => {
            if let Some(path) = cli
                .global
                .out
                .as_ref()
                .filter(|_| !matches!(cli.command, Command::Scenario { .. }))
            {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn spec(f: &str, phi: &str, g: &Global) -> Result<FoguelHankelSpec> {
    if g.trunc == 0 {
        return Err(Error::InvalidArgument("--trunc must be positive".into()));
    }
    let s = FoguelHankelSpec::new(resolve_series(f)?, resolve_map(phi)?, g.trunc);
    match g.headroom {
        Some(h) => s.with_headroom(h),
        None => Ok(s),
    }
}

/// Key-value output for single numbers.
fn record(g: &Global, pairs: &[(&str, String)]) -> String {
    let pairs: Vec<(&str, String)> = pairs
        .iter()
        .map(|(k, v)| match (v.parse::<i64>(), v.parse::<f64>()) {
            (Err(_), Ok(x)) => (*k, num(x)),
            _ => (*k, v.clone()),
        })
        .collect();
    match g.format {
        Format::Json => {
            let mut m = serde_json::Map::new();
            m.insert("schema".into(), SCHEMA.into());
            for (k, v) in &pairs {
                let val = v
                    .parse::<i64>()
                    .ok()
                    .map(serde_json::Number::from)
                    .or_else(|| v.parse::<f64>().ok().and_then(serde_json::Number::from_f64));
                m.insert(
                    k.to_string(),
                    val.map(serde_json::Value::Number).unwrap_or_else(|| v.clone().into()),
                );
            }
            serde_json::to_string_pretty(&serde_json::Value::Object(m)).expect("record serializes") + "\n"
        }
        Format::Csv => {
            let keys: Vec<&str> = pairs.iter().map(|p| p.0).collect();
            let vals: Vec<String> = pairs
                .iter()
                .map(|p| {
                    if p.1.contains(',') {
                        format!("\"{}\"", p.1)
                    } else {
                        p.1.clone()
                    }
                })
                .collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
    }
}

fn quad(radial: usize, angular: usize, tol: f64) -> Result<QuadratureSpec> {
    let q = QuadratureSpec::new(radial, angular, tol);
    q.validate()?;
    Ok(q)
}

/// Runs a parsed command and returns what it prints.
pub fn execute(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    match &cli.command {
        Command::Catalog => {
            let rows: Vec<(String, &str)> = catalog()
                .iter()
                .map(|(n, e)| {
                    (
                        n.clone(),
                        match e {
                            CatalogEntry::Map(_) => "self-map",
                            CatalogEntry::Series(_) => "symbol",
                        },
                    )
                })
                .collect();
            Ok(match g.format {
                Format::Csv => rows.iter().map(|(n, _)| format!("{n}\n")).collect(),
                Format::Json => {
                    let list: Vec<_> = rows
                        .iter()
                        .map(|(n, k)| serde_json::json!({"name": n, "kind": k}))
                        .collect();
                    serde_json::to_string_pretty(&serde_json::json!({"schema": SCHEMA, "entries": list}))
                        .expect("catalog serializes")
                        + "\n"
                }
            })
        }
        Command::Norm {
            op,
            f,
            phi,
            power,
            lambda,
        } => {
            let value = match op {
                Op::HilbertMatrix => spectral_norm(&hilbert_matrix(g.trunc), g.tol)?,
                Op::FoguelHankel => spectral_norm(&foguel_hankel(&spec(f, phi, g)?), g.tol)?,
                Op::Power => spectral_norm(&power_closed_form(&spec(f, phi, g)?, *power)?, g.tol)?,
                Op::Resolvent => resolvent_norm(&spec(f, phi, g)?, parse_complex(lambda)?, g.tol)?,
            };
            let op = op.to_possible_value().expect("named variant").get_name().to_string();
            Ok(record(
                g,
                &[
                    ("op", op),
                    ("truncation", g.trunc.to_string()),
                    ("norm", value.to_string()),
                ],
            ))
        }
        Command::Powers { f, phi, n } => {
            let seq = power_norm_sequence(&spec(f, phi, g)?, &parse_usize_list(n)?, g.tol)?;
            Ok(match g.format {
                Format::Csv => seq.to_csv(),
                Format::Json => seq.to_json() + "\n",
            })
        }
        Command::Kreiss {
            f,
            phi,
            shells,
            angles,
            depth,
        } => {
            let mut schedule = KreissSchedule::new(KreissSchedule::default().shells, *angles, *depth);
            if let Some(s) = shells {
                schedule.shells = parse_f64_list(s)?;
            }
            let rep = kreiss_scan(&spec(f, phi, g)?, &schedule)?;
            Ok(report_text(g, &rep))
        }
        Command::Bloch {
            f,
            r_max,
            shells,
            angles,
        } => {
            let rep = bloch_norm_estimate(&resolve_series(f)?, *r_max, &quad(*shells, *angles, g.tol)?)?;
            Ok(report_text(g, &rep))
        }
        Command::Witness { f, phi, radii, delta } => {
            let radii = parse_f64_list(radii)?;
            match phi {
                None => {
                    let grid: Vec<Complex64> = radii
                        .iter()
                        .flat_map(|&r| {
                            (0..16).map(move |j| Complex64::from_polar(r, std::f64::consts::PI * j as f64 / 8.0))
                        })
                        .collect();
                    Ok(report_text(g, &kreiss_lower_witness(&resolve_series(f)?, &grid)?))
                }
                Some(p) => {
                    let map = resolve_map(p)?;
                    let mut pairs = vec![("phi", p.clone())];
                    let mut labels = Vec::new();
                    let mut values = Vec::new();
                    for &r in &radii {
                        let d = delta.unwrap_or((1.0 - r).min(0.5));
                        labels.push(format!("r={r}"));
                        values.push(hilbert_kreiss_witness(&map, Complex64::new(r, 0.0), d)?.to_string());
                    }
                    for (l, v) in labels.iter().zip(values) {
                        pairs.push((l.as_str(), v));
                    }
                    Ok(record(g, &pairs))
                }
            }
        }
        Command::Quadrature {
            check,
            f,
            g: g_name,
            phi,
            n,
            r,
            arc_center,
            arc_length,
            order,
            samples,
            radial,
            angular,
        } => {
            let q = || quad(*radial, *angular, g.tol.max(1e-12));
            let arc = || ArcBox::new(*arc_center, *arc_length);
            let pairs: Vec<(&str, String)> = match check {
                Check::Hardy => {
                    let a = resolve_series(f)?;
                    let b = resolve_series(g_name.as_deref().unwrap_or(f))?;
                    let v = hardy_inner_product_quadrature(&a, &b, &q()?)?;
                    let exact = coefficient_inner_product(&a, &b)?;
                    vec![
                        ("quadrature", format_complex(v)),
                        ("coefficients", format_complex(exact)),
                        ("error", (v - exact).norm().to_string()),
                    ]
                }
                Check::Carleson => {
                    let v = carleson_box_average(&resolve_map(phi)?, *n, *r, &arc()?, &q()?)?;
                    vec![
                        ("average", v.to_string()),
                        ("normalized", (v * (*n as f64).powf(r + 1.0)).to_string()),
                    ]
                }
                Check::Schwarz => {
                    let rep = schwarz_pick_check(&resolve_map(phi)?, *order, *samples, g.seed)?;
                    vec![
                        ("worst_first", rep.worst_first.to_string()),
                        ("worst_second", rep.worst_second.to_string()),
                        ("worst_first_inverted", rep.worst_first_inverted.to_string()),
                    ]
                }
                Check::Pairing => {
                    let u = resolve_series(f)?;
                    let v = resolve_series(g_name.as_deref().unwrap_or(f))?;
                    let p = hilbert_pairing_check(&u, &v, g.trunc, &q()?)?;
                    vec![
                        ("matrix", format_complex(p.matrix)),
                        ("integral", format_complex(p.integral)),
                        ("discrepancy", p.discrepancy.to_string()),
                    ]
                }
                Check::Fejer => {
                    let fr = fejer_riesz_check(&resolve_series(f)?)?;
                    vec![
                        ("lhs", fr.lhs.to_string()),
                        ("rhs", fr.rhs.to_string()),
                        ("slack", fr.slack.to_string()),
                    ]
                }
                Check::Luecking => {
                    let base = resolve_map(phi)?;
                    let psi = SelfMap::certified(base.series().tilde(), base.sup_bound(), base.sup_bound(), "tilde")?;
                    let rep = luecking_quantity(power_density(&psi, *n), *order, &arc()?, &q()?)?;
                    vec![
                        ("value", rep.value.to_string()),
                        ("nodes", rep.nodes.to_string()),
                        ("under_resolved", rep.under_resolved.to_string()),
                    ]
                }
                Check::Weight => {
                    let (min, ok) = weight_positivity(*samples);
                    vec![("min_weight", min.to_string()), ("positive", ok.to_string())]
                }
            };
            Ok(record(g, &pairs))
        }
        Command::Scenario {
            name,
            config,
            overrides,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let body = if text.lines().any(|l| l.trim_start().starts_with("scenario")) {
                        text
                    } else {
                        format!("scenario = {name}\n{text}")
                    };
                    let cfg = ExperimentConfig::parse(&body)?;
                    if cfg.scenario != *name {
                        return Err(Error::Config(format!(
                            "config names scenario `{}` but `{name}` was requested",
                            cfg.scenario
                        )));
                    }
                    cfg
                }
                None => ExperimentConfig::default_for(name)?,
            };
            if g.seed != DEFAULT_SEED {
                cfg.seed = g.seed;
            }
            if let Some(out) = &g.out {
                cfg.out_dir = out.clone();
            }
            for kv in overrides {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("override `{kv}` is not key=value")))?;
                cfg.set(k.trim(), v.trim())?;
            }
            let result = run_scenario(&cfg)?;
            let mut s = result.summary();
            for p in &result.artifacts {
                s.push_str(&format!("wrote {}\n", p.display()));
            }
            Ok(s)
        }
    }
}

fn report_text(g: &Global, rep: &crate::report::ScanReport) -> String {
    match g.format {
        Format::Csv => rep.to_csv(),
        Format::Json => rep.to_json() + "\n",
    }
}
