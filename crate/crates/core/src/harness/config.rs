//! Flat `key = value` experiment configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analysis::{QuadratureSpec, Scheme, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::spectral::KreissSchedule;
use crate::symbols::catalog::resolve;
use crate::text::{parse_f64_list, parse_usize_list};

/// Names accepted by [`crate::harness::run_scenario`].
pub const SCENARIOS: [&str; 5] = [
    "peller-dichotomy",
    "gfh-power-bounded",
    "hilbert-foguel-kreiss",
    "kreiss-witness",
    "lemma-suite",
];

/// Everything a scenario run depends on. Two runs with equal configs emit identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: String,
    /// Symbols `f`; lists of names are separated by `;` because names may contain commas.
    pub f: Vec<String>,
    /// Self-maps `phi`.
    pub phi: Vec<String>,
    pub truncations: Vec<usize>,
    pub powers: Vec<usize>,
    pub schedule: KreissSchedule,
    pub quadrature: QuadratureSpec,
    /// Radii for radial witness sweeps.
    pub radii: Vec<f64>,
    /// Sample or batch size for randomized checks.
    pub samples: usize,
    pub seed: u64,
    /// Relative tolerance for spectral norms.
    pub tol: f64,
    pub out_dir: PathBuf,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl ExperimentConfig {
    /// The configuration each scenario runs with when nothing is overridden.
    pub fn default_for(scenario: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig {
            scenario: scenario.to_string(),
            f: names(&["hilbert"]),
            phi: names(&["identity_map"]),
            truncations: vec![512, 1024, 2048],
            powers: (1..=10).map(|k| 10 * k).collect(),
            schedule: KreissSchedule {
                shells: (1..=12).map(|k| 1.0 + 0.5f64.powi(k)).collect(),
                angles: 32,
                refine_depth: 4,
                tol: 1e-6,
            },
            quadrature: QuadratureSpec::default(),
            radii: vec![0.9, 0.99, 0.999],
            samples: 100,
            seed: DEFAULT_SEED,
            tol: 1e-10,
            out_dir: PathBuf::from("out"),
        };
        match scenario {
            "peller-dichotomy" => {
                cfg.f = names(&["hilbert", "lacunary_bloch"]);
            }
            "gfh-power-bounded" => {
                cfg.f = names(&["lacunary_bloch"]);
                cfg.phi = names(&["lens", "moebius:0.5"]);
                cfg.truncations = vec![2048];
                cfg.powers = (1..=20).chain((25..=200).step_by(5)).collect();
                cfg.tol = 1e-8;
            }
            "hilbert-foguel-kreiss" => {
                cfg.phi = names(&["lens", "identity_map"]);
                cfg.truncations = vec![128, 256, 512];
            }
            "kreiss-witness" => {
                cfg.f = names(&["hilbert", "lacunary_bloch", "poly:1,-0.5,0.25,0,0,0,0,0,0.125"]);
                cfg.truncations = vec![1];
                cfg.radii = vec![0.5, 0.9, 0.99, 0.999];
            }
            "lemma-suite" => {
                cfg.phi = names(&["lens", "moebius:0.5"]);
                cfg.truncations = vec![33];
                cfg.powers = vec![64, 128, 256];
                cfg.quadrature = QuadratureSpec::new(8, 32, 1e-8);
                cfg.samples = 1000;
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown scenario `{other}`; known: {}",
                    SCENARIOS.join(", ")
                )))
            }
        }
        Ok(cfg)
    }

    /// Parses a config file. The `scenario` key selects the defaults the other keys override.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            pairs.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        let scenario = pairs
            .iter()
            .find(|p| p.1 == "scenario")
            .map(|p| p.2.clone())
            .ok_or_else(|| Error::Config("missing `scenario` key".into()))?;
        let mut cfg = Self::default_for(&scenario)?;
        for (line, k, v) in &pairs {
            cfg.set(k, v).map_err(|e| Error::Config(format!("line {line}: {e}")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one `key = value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let real = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("`{v}` is not a number")))
        };
        let count = |v: &str| -> Result<usize> {
            v.parse::<usize>()
                .map_err(|_| Error::Config(format!("`{v}` is not a count")))
        };
        let list = |v: &str| -> Vec<String> {
            v.split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        };
        match key {
            "scenario" => {
                if value != self.scenario {
                    return Err(Error::Config("`scenario` may only be given once".into()));
                }
            }
            "f" => self.f = list(value),
            "phi" => self.phi = list(value),
            "truncations" => self.truncations = parse_usize_list(value)?,
            "powers" => self.powers = parse_usize_list(value)?,
            "shells" => self.schedule.shells = parse_f64_list(value)?,
            "angles" => self.schedule.angles = count(value)?,
            "refine_depth" => self.schedule.refine_depth = count(value)?,
            "kreiss_tol" => self.schedule.tol = real(value)?,
            "radial_nodes" => self.quadrature.radial = count(value)?,
            "angular_nodes" => self.quadrature.angular = count(value)?,
            "quad_tol" => self.quadrature.tol = real(value)?,
            "quad_refinements" => self.quadrature.max_refinements = count(value)?,
            "quad_scheme" => {
                self.quadrature.scheme = match value {
                    "tensor_polar" => Scheme::TensorPolar,
                    "adaptive_simpson" => Scheme::AdaptiveSimpson,
                    other => return Err(Error::Config(format!("unknown quadrature scheme `{other}`"))),
                }
            }
            "radii" => self.radii = parse_f64_list(value)?,
            "samples" => self.samples = count(value)?,
            "seed" => {
                self.seed = value
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("`{value}` is not a 64-bit seed")))?
            }
            "tol" => self.tol = real(value)?,
            "out" => self.out_dir = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !SCENARIOS.contains(&self.scenario.as_str()) {
            return Err(Error::Config(format!("unknown scenario `{}`", self.scenario)));
        }
        for name in self.f.iter().chain(&self.phi) {
            resolve(name)?;
        }
        for name in &self.phi {
            crate::symbols::resolve_map(name)?;
        }
        if self.f.is_empty() || self.phi.is_empty() {
            return Err(Error::Config("need at least one f and one phi".into()));
        }
        if self.truncations.is_empty() || self.truncations.contains(&0) {
            return Err(Error::Config("truncations must be positive".into()));
        }
        if self.truncations.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("truncations must be sorted increasing".into()));
        }
        if self.powers.is_empty() || self.powers[0] == 0 || self.powers.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("powers must be positive and increasing".into()));
        }
        self.schedule.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.quadrature.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::Config("radii must lie in (0, 1)".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tol {} outside (0, 1)", self.tol)));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        Ok(())
    }

    /// The config in its own file format; [`ExperimentConfig::parse`] reads it back unchanged.
    pub fn to_text(&self) -> String {
        let join_u = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let join_f = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let scheme = match self.quadrature.scheme {
            Scheme::TensorPolar => "tensor_polar",
            Scheme::AdaptiveSimpson => "adaptive_simpson",
        };
        let mut s = String::new();
        let _ = writeln!(s, "scenario = {}", self.scenario);
        let _ = writeln!(s, "f = {}", self.f.join(";"));
        let _ = writeln!(s, "phi = {}", self.phi.join(";"));
        let _ = writeln!(s, "truncations = {}", join_u(&self.truncations));
        let _ = writeln!(s, "powers = {}", join_u(&self.powers));
        let _ = writeln!(s, "shells = {}", join_f(&self.schedule.shells));
        let _ = writeln!(s, "angles = {}", self.schedule.angles);
        let _ = writeln!(s, "refine_depth = {}", self.schedule.refine_depth);
        let _ = writeln!(s, "kreiss_tol = {}", self.schedule.tol);
        let _ = writeln!(s, "quad_scheme = {scheme}");
        let _ = writeln!(s, "radial_nodes = {}", self.quadrature.radial);
        let _ = writeln!(s, "angular_nodes = {}", self.quadrature.angular);
        let _ = writeln!(s, "quad_tol = {}", self.quadrature.tol);
        let _ = writeln!(s, "quad_refinements = {}", self.quadrature.max_refinements);
        let _ = writeln!(s, "radii = {}", join_f(&self.radii));
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "tol = {}", self.tol);
        let _ = writeln!(s, "out = {}", self.out_dir.display());
        s
    }
}
