//! Function-theoretic witnesses for the Kreiss condition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::{Location, ScanReport, TracePoint};
use crate::symbols::{PowerSeries, SelfMap};

type C64 = Complex64;

/// Absolute tolerance of the adaptive Simpson rule used by [`hilbert_kreiss_witness`].
pub const WITNESS_TOL: f64 = 1e-10;

/// Subdivision depth at which the adaptive rule gives up.
pub const MAX_DEPTH: usize = 40;

/// `max (1 - |mu|^2)^2 |g'''(mu)| / 6` over `grid`, with `g(mu) = mu^3 f(mu)`.
///
/// Growth of this quantity as the grid approaches the circle rules out the
/// Kreiss condition for the Foguel–Hankel operator of `f`.
pub fn kreiss_lower_witness(f: &PowerSeries, grid: &[C64]) -> Result<ScanReport> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("witness grid is empty".into()));
    }
    if let Some(z) = grid.iter().find(|z| !(z.norm() < 1.0)) {
        return Err(Error::InvalidArgument(format!("grid point {z} is not inside the disc")));
    }
    let g = f.shifted_up(3);
    let trace = grid
        .iter()
        .map(|&mu| {
            let w = (1.0 - mu.norm_sqr()).powi(2) * g.eval(mu, 3)?.norm() / 6.0;
            Ok(TracePoint {
                at: Location::complex(mu),
                value: w,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::from_trace(trace, 0, None))
}

/// `W = (1 - |mu|)^3 / delta * integral_{1 - delta}^1 d rho / |1 - conj(mu) phi(rho)|^4`.
///
/// Bounded over `|mu| in [1/2, 1)` and `delta in (0, 1/2]` whenever the
/// Foguel–Hankel operator with the Hilbert symbol and map `phi` satisfies
/// the Kreiss condition. The integral is computed by adaptive Simpson with
/// absolute tolerance [`WITNESS_TOL`] on `W`, split at the sampled maximum of
/// the integrand.
pub fn hilbert_kreiss_witness(phi: &SelfMap, mu: C64, delta: f64) -> Result<f64> {
    let m = mu.norm();
    if !(0.5..1.0).contains(&m) {
        return Err(Error::InvalidArgument(format!("|mu| = {m} outside [1/2, 1)")));
    }
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::InvalidArgument(format!("delta = {delta} outside (0, 1/2]")));
    }
    let scale = (1.0 - m).powi(3) / delta;
    let mc = mu.conj();
    let integrand = |rho: f64| -> Result<f64> {
        let w = (C64::new(1.0, 0.0) - mc * phi.eval(C64::new(rho, 0.0), 0)?).norm_sqr();
        Ok(scale / (w * w))
    };
    let (a, b) = (1.0 - delta, 1.0);
    // Locate the peak on a coarse grid and split there.
    let samples = 64;
    let mut peak = (f64::NEG_INFINITY, a);
    for i in 0..=samples {
        let x = a + (b - a) * i as f64 / samples as f64;
        let v = integrand(x)?;
        if v > peak.0 {
            peak = (v, x);
        }
    }
    let split = peak.1;
    let mut total = 0.0;
    for (lo, hi) in [(a, split), (split, b)] {
        if hi > lo {
            total += adaptive_simpson(&integrand, lo, hi, 0.5 * WITNESS_TOL, MAX_DEPTH)?;
        }
    }
    Ok(total)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, [a, m, b], [fa, fm, fb], whole, tol, max_depth)
}

fn simpson_step<F>(f: &F, x: [f64; 3], y: [f64; 3], whole: f64, tol: f64, depth: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let [a, m, b] = x;
    let [fa, fm, fb] = y;
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure(format!(
            "subdivision depth exhausted on [{a}, {b}] with error estimate {:e}",
            delta.abs() / 15.0
        )));
    }
    Ok(simpson_step(f, [a, lm, m], [fa, flm, fm], left, 0.5 * tol, depth - 1)?
        + simpson_step(f, [m, rm, b], [fm, frm, fb], right, 0.5 * tol, depth - 1)?)
}
