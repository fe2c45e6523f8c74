use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::resolvent::resolvent_norm;
use crate::error::{Error, Result};
use crate::report::{Location, ScanReport, TracePoint};
use crate::sections::FoguelHankelSpec;

type C64 = Complex64;

/// Where and how finely `(|lambda| - 1) ||(lambda - Gamma)^{-1}||` is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KreissSchedule {
    /// Radii in (1, 2], strictly decreasing toward 1.
    pub shells: Vec<f64>,
    /// Equispaced angles per shell, starting at angle 0.
    pub angles: usize,
    /// Hill-climbing bisection steps around each shell's best point.
    pub refine_depth: usize,
    /// Relative tolerance for each norm.
    pub tol: f64,
}

impl Default for KreissSchedule {
    fn default() -> Self {
        KreissSchedule {
            shells: (1..=12).map(|k| 1.0 + 0.5f64.powi(k)).collect(),
            angles: 256,
            refine_depth: 6,
            tol: 1e-8,
        }
    }
}

impl KreissSchedule {
    pub fn new(shells: Vec<f64>, angles: usize, refine_depth: usize) -> Self {
        KreissSchedule {
            shells,
            angles,
            refine_depth,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shells.is_empty() || self.angles == 0 {
            return Err(Error::InvalidArgument(
                "schedule needs at least one shell and one angle".into(),
            ));
        }
        if self.shells.iter().any(|&r| !(r > 1.0 && r <= 2.0)) {
            return Err(Error::InvalidArgument("shell radii must lie in (1, 2]".into()));
        }
        if self.shells.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("shells must decrease toward 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "norm tolerance {} must be positive and finite",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Lower estimate of the Kreiss constant of the leading section of `Gamma`.
///
/// Each shell is sampled on its angle grid; the best node (lowest angle index
/// on ties) is then improved by bisection in angle and radius, moving only on
/// strict improvement. When both symbols are real the resolvent norm is
/// symmetric under conjugation and only angles in `[0, pi]` are visited.
/// Every evaluation is recorded in the trace in visiting order.
pub fn kreiss_scan(spec: &FoguelHankelSpec, schedule: &KreissSchedule) -> Result<ScanReport> {
    schedule.validate()?;
    let mut trace = Vec::new();
    let eval = |radius: f64, theta: f64, trace: &mut Vec<TracePoint>| -> Result<f64> {
        let lambda = C64::from_polar(radius, theta);
        let v = (radius - 1.0) * resolvent_norm(spec, lambda, schedule.tol)?;
        trace.push(TracePoint {
            at: Location::complex(lambda),
            value: v,
        });
        Ok(v)
    };
    let m = schedule.angles;
    let step = 2.0 * PI / m as f64;
    let visited: Vec<usize> = if spec.is_real() {
        (0..=m / 2).collect()
    } else {
        (0..m).collect()
    };
    for (s, &radius) in schedule.shells.iter().enumerate() {
        let mut best = (f64::NEG_INFINITY, radius, 0.0);
        for &a in &visited {
            let theta = a as f64 * step;
            let v = eval(radius, theta, &mut trace)?;
            if v > best.0 {
                best = (v, radius, theta);
            }
        }
        // Radial steps start at half the gap to the next shell inward.
        let inner = schedule.shells.get(s + 1).copied().unwrap_or(1.0);
        let mut dr = 0.5 * (radius - inner);
        let mut dt = 0.5 * step;
        for _ in 0..schedule.refine_depth {
            let (_, r0, t0) = best;
            let candidates = [(r0, t0 - dt), (r0, t0 + dt), (r0 - dr, t0), (r0 + dr, t0)];
            let mut moved = best;
            for (r, t) in candidates {
                if !(r > 1.0 && r <= 2.0) {
                    continue;
                }
                let v = eval(r, t, &mut trace)?;
                if v > moved.0 {
                    moved = (v, r, t);
                }
            }
            best = moved;
            dr *= 0.5;
            dt *= 0.5;
        }
    }
    Ok(ScanReport::from_trace(
        trace,
        schedule.refine_depth,
        Some(spec.truncation),
    ))
}

/// Scan reports for the same symbols at each truncation, in the given order.
pub fn kreiss_convergence(
    spec: &FoguelHankelSpec,
    truncations: &[usize],
    schedule: &KreissSchedule,
) -> Result<Vec<ScanReport>> {
    truncations
        .iter()
        .map(|&n| kreiss_scan(&spec.with_truncation(n), schedule))
        .collect()
}
