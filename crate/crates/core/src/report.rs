//! Scan results shared by every supremum estimate (Kreiss, Bloch, Carleson, radial).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// JSON schema tag written into every emitted document.
pub const SCHEMA: &str = "fh-lab/1";

/// Where a scanned quantity was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Complex { re: f64, im: f64 },
    Real { value: f64 },
    Arc { center: f64, length: f64 },
}

impl Location {
    pub fn complex(z: Complex64) -> Self {
        Location::Complex { re: z.re, im: z.im }
    }

    pub fn real(value: f64) -> Self {
        Location::Real { value }
    }

    fn csv_fields(&self) -> (String, String, String) {
        match *self {
            Location::Complex { re, im } => ("complex".into(), re.to_string(), im.to_string()),
            Location::Real { value } => ("real".into(), value.to_string(), String::new()),
            Location::Arc { center, length } => ("arc".into(), center.to_string(), length.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub at: Location,
    pub value: f64,
}

/// Outcome of an adaptive supremum scan.
///
/// `estimate` is the maximum over the recorded trace and `argmax` the first
/// location attaining it, in trace order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub estimate: f64,
    pub argmax: Location,
    pub trace: Vec<TracePoint>,
    pub refinement_depth: usize,
    pub truncation_used: Option<usize>,
}

impl ScanReport {
    /// Builds a report from a nonempty trace. Non-finite values count as +inf.
    pub fn from_trace(trace: Vec<TracePoint>, refinement_depth: usize, truncation_used: Option<usize>) -> Self {
        assert!(!trace.is_empty(), "a scan report needs at least one trace point");
        let mut best = 0;
        for (i, p) in trace.iter().enumerate() {
            let v = if p.value.is_nan() { f64::INFINITY } else { p.value };
            let b = if trace[best].value.is_nan() {
                f64::INFINITY
            } else {
                trace[best].value
            };
            if v > b {
                best = i;
            }
        }
        ScanReport {
            estimate: trace[best].value,
            argmax: trace[best].at,
            trace,
            refinement_depth,
            truncation_used,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "schema": SCHEMA,
            "estimate": self.estimate,
            "argmax": self.argmax,
            "refinement_depth": self.refinement_depth,
            "truncation_used": self.truncation_used,
            "trace": self.trace,
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    /// One row per trace point: `kind,a,b,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,a,b,value\n");
        for p in &self.trace {
            let (k, a, b) = p.at.csv_fields();
            out.push_str(&format!("{k},{a},{b},{}\n", p.value));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_is_trace_max_first_wins() {
        let t = vec![
            TracePoint {
                at: Location::real(0.1),
                value: 1.0,
            },
            TracePoint {
                at: Location::real(0.2),
                value: 3.0,
            },
            TracePoint {
                at: Location::real(0.3),
                value: 3.0,
            },
        ];
        let r = ScanReport::from_trace(t, 0, None);
        assert_eq!(r.estimate, 3.0);
        assert_eq!(r.argmax, Location::real(0.2));
        assert!(r.to_csv().lines().count() == 4);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
    }
}
