use num_complex::Complex64;

use super::series::PowerSeries;
use crate::error::{Error, Result};
use crate::report::{Location, ScanReport, TracePoint};

/// A holomorphic self-map of the disc with analytically entered certificates.
#[derive(Clone, Debug)]
pub struct SelfMap {
    series: PowerSeries,
    sup_bound: f64,
    radial_bound: f64,
    provenance: String,
}

impl SelfMap {
    /// `sup_bound` bounds `|phi|` on the disc, `radial_bound` bounds `|phi(r)|` on (0,1).
    pub fn certified(
        series: PowerSeries,
        sup_bound: f64,
        radial_bound: f64,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&sup_bound) || !(0.0..=1.0).contains(&radial_bound) {
            return Err(Error::InvalidArgument(format!(
                "certificates must lie in [0,1], got sup {sup_bound}, radial {radial_bound}"
            )));
        }
        if series.coefficient(0).norm() >= 1.0 {
            return Err(Error::InvalidArgument("phi(0) must lie in the open disc".into()));
        }
        Ok(SelfMap {
            series,
            sup_bound,
            radial_bound,
            provenance: provenance.into(),
        })
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn radial_bound(&self) -> f64 {
        self.radial_bound
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn name(&self) -> &str {
        self.series.name()
    }

    pub fn eval(&self, z: Complex64, d: usize) -> Result<Complex64> {
        self.series.eval(z, d)
    }
}

/// Largest `|phi(r)|` over the tail half of `r_grid`, with the full radial trace.
///
/// This is a lower estimate of `limsup_{r -> 1} |phi(r)|`; only the catalog's
/// `radial_bound` is an upper certificate.
pub fn radial_limsup(phi: &SelfMap, r_grid: &[f64]) -> Result<ScanReport> {
    if r_grid.is_empty() {
        return Err(Error::InvalidArgument("radial grid is empty".into()));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) || r_grid[0] <= 0.0 || *r_grid.last().unwrap() >= 1.0 {
        return Err(Error::InvalidArgument(
            "radial grid must be increasing inside (0,1)".into(),
        ));
    }
    let mut trace = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let v = phi.eval(Complex64::new(r, 0.0), 0)?.norm();
        trace.push(TracePoint {
            at: Location::real(r),
            value: v,
        });
    }
    let half = r_grid.len() / 2;
    let tail = ScanReport::from_trace(trace[half..].to_vec(), 0, None);
    Ok(ScanReport {
        estimate: tail.estimate,
        argmax: tail.argmax,
        trace,
        refinement_depth: 0,
        truncation_used: None,
    })
}
