//! The weighted-area formula for the Hardy inner product.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{converge, graded_toward_lo, radial_integral, uniform, QuadratureSpec};
use crate::error::{Error, Result};
use crate::symbols::PowerSeries;

type C64 = Complex64;

/// Largest polynomial degree accepted by [`hardy_inner_product_quadrature`].
pub const MAX_DEGREE: usize = 64;

/// `ln(1/r)(1 + r^2) - (1 - r^2)`, positive on `(0, 1)` and of order `(1-r)^3` at the circle.
pub fn area_weight(r: f64) -> f64 {
    if r == 0.0 {
        return f64::INFINITY;
    }
    // ln_1p keeps the (1-r)^3 cancellation accurate near the circle
    let log = if r < 0.5 { -r.ln() } else { -(r - 1.0).ln_1p() };
    log * (1.0 + r * r) - (1.0 - r) * (1.0 + r)
}

/// Smallest weight on the radii `i / (count + 1)`, `i = 1..=count`, and whether all are positive.
pub fn weight_positivity(count: usize) -> (f64, bool) {
    let min = (1..=count)
        .map(|i| area_weight(i as f64 / (count + 1) as f64))
        .fold(f64::INFINITY, f64::min);
    (min, min > 0.0)
}

fn polynomial_degree(s: &PowerSeries) -> Result<usize> {
    match s.degree_hint() {
        Some(d) if d <= MAX_DEGREE => Ok(d),
        _ => Err(Error::InvalidArgument(format!(
            "`{}` must be a polynomial of degree at most {MAX_DEGREE}",
            s.name()
        ))),
    }
}

/// `f(0) conj g(0) + f'(0) conj g'(0) + 2 integral f'' conj g'' w dm`, with `w`
/// the [`area_weight`] and `m` normalized area measure.
///
/// Angular integration is the trapezoid rule, exact once the angular count
/// exceeds the degree of `f'' conj g''`; the radial rule is graded toward the
/// logarithmic singularity of the weight at the origin. `q.tol` is an
/// absolute tolerance between consecutive refinement levels.
pub fn hardy_inner_product_quadrature(f: &PowerSeries, g: &PowerSeries, q: &QuadratureSpec) -> Result<C64> {
    let df = polynomial_degree(f)?;
    let dg = polynomial_degree(g)?;
    let boundary = f.eval(C64::new(0.0, 0.0), 0)? * g.eval(C64::new(0.0, 0.0), 0)?.conj()
        + f.eval(C64::new(0.0, 0.0), 1)? * g.eval(C64::new(0.0, 0.0), 1)?.conj();
    if df < 2 || dg < 2 {
        return Ok(boundary);
    }
    let fc = f.coeffs(df + 1);
    let gc = g.coeffs(dg + 1);
    // Second-derivative coefficients: f''(z) = sum a_k z^k.
    let second = |c: &[C64]| -> Vec<C64> { (2..c.len()).map(|k| c[k] * (k * (k - 1)) as f64).collect() };
    let (a, b) = (second(&fc), second(&gc));
    let horner = |c: &[C64], z: C64| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * z + x);
    let mut panels = graded_toward_lo(0.0, 0.5, 48);
    panels.extend(uniform(0.5, 1.0, 4));
    let area = |level: usize| -> Result<C64> {
        // at least one node beyond the trigonometric degree of f'' conj g''
        let m = q.angular.max(df + dg - 3) << level;
        // (1/m) sum over the circle of f'' conj g'' at radius r
        let ring = |r: f64| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                let z = C64::from_polar(r, 2.0 * PI * j as f64 / m as f64);
                acc += horner(&a, z) * horner(&b, z).conj();
            }
            acc / m as f64
        };
        // 2 integral ... dm = 4 integral_0^1 w(r) r ring(r) dr
        let part = |pick: fn(C64) -> f64| {
            radial_integral(q, level, &panels, 0.25 * q.tol, |r| {
                Ok(if r == 0.0 {
                    0.0
                } else {
                    4.0 * area_weight(r) * r * pick(ring(r))
                })
            })
        };
        let re = part(|z| z.re)?;
        let im = if f.is_real() && g.is_real() {
            0.0
        } else {
            part(|z| z.im)?
        };
        Ok(C64::new(re, im))
    };
    let integral = converge(
        q,
        "weighted-area inner product",
        area,
        |x: C64, y: C64| (x - y).norm(),
        |_| q.tol,
    )?;
    Ok(boundary + integral)
}

/// `sum_k f^(k) conj g^(k)` over the coefficients of two polynomials.
pub fn coefficient_inner_product(f: &PowerSeries, g: &PowerSeries) -> Result<C64> {
    let n = polynomial_degree(f)?.max(polynomial_degree(g)?) + 1;
    Ok(f.coeffs(n).iter().zip(g.coeffs(n)).map(|(x, y)| x * y.conj()).sum())
}
