use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::QuadratureSpec;
use crate::error::{Error, Result};
use crate::report::{Location, ScanReport, TracePoint};
use crate::symbols::PowerSeries;

/// `max (1 - |z|^2) |f''(z)|` over a polar grid of `|z| <= r_max`.
///
/// The `grid.radial` shells sit at `1 - (1 - r_max)^{i/(R-1)}`, from the
/// origin out to `r_max` with geometric clustering at the circle, each
/// sampled at `grid.angular` equispaced angles. The trace holds one shell
/// maximum per radius, so growth toward the circle is visible directly.
pub fn bloch_norm_estimate(f: &PowerSeries, r_max: f64, grid: &QuadratureSpec) -> Result<ScanReport> {
    grid.validate()?;
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::InvalidArgument(format!("r_max = {r_max} must lie in (0, 1)")));
    }
    let shells = grid.radial;
    let gap = 1.0 - r_max;
    let mut trace = Vec::with_capacity(shells);
    for i in 0..shells {
        let r = 1.0 - gap.powf(i as f64 / (shells - 1) as f64);
        let weight = 1.0 - r * r;
        let samples = if r == 0.0 { 1 } else { grid.angular };
        let mut best = 0.0f64;
        for j in 0..samples {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / samples as f64);
            best = best.max(weight * f.eval(z, 2)?.norm());
        }
        trace.push(TracePoint {
            at: Location::real(r),
            value: best,
        });
    }
    Ok(ScanReport::from_trace(trace, 0, None))
}
