//! Averages over Carleson boxes: the power decay of self-maps and the Luecking quantity.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{
    composite, converge, graded_toward_lo, radial_integral, real_gap, uniform, ArcBox, QuadratureSpec,
};
use crate::error::{Error, Result};
use crate::symbols::SelfMap;

type C64 = Complex64;

/// Boxes are integrated only where `1 - |z| >=` this in [`luecking_quantity`];
/// for densities comparable to area measure the full integral diverges logarithmically.
pub const LUECKING_CUTOFF: f64 = 1e-6;

/// Gauss points per angular panel.
const ANGULAR_PANEL: usize = 8;

/// Geometric radial panels per box; the thinnest has depth `2^-24` of the box's.
const GRADING: usize = 24;

/// `integral_{S(I), s_lo <= 1 - |z|} f dm` at refinement `level`.
fn box_integral<F>(b: &ArcBox, s_lo: f64, q: &QuadratureSpec, level: usize, abs_tol: f64, f: &F) -> Result<f64>
where
    F: Fn(C64) -> Result<f64>,
{
    let (t0, t1) = b.angles();
    let depth = b.depth();
    let levels = if s_lo > 0.0 {
        ((depth / s_lo).log2().ceil().max(1.0) as usize).min(40)
    } else {
        GRADING
    };
    let s_panels = graded_toward_lo(s_lo, depth, levels);
    let m = q.at_level(level).1;
    let angles = composite(&uniform(t0, t1, (m / ANGULAR_PANEL).max(1)), ANGULAR_PANEL);
    let share = abs_tol / angles.len() as f64;
    let mut acc = 0.0;
    for (t, wt) in angles {
        let e = C64::from_polar(1.0, t);
        let ring = radial_integral(q, level, &s_panels, share, |s| {
            let r = 1.0 - s;
            Ok(f(e * r)? * r)
        })?;
        acc += wt * ring;
    }
    Ok(acc / PI)
}

fn average_over_box<F>(b: &ArcBox, s_lo: f64, q: &QuadratureSpec, what: &str, f: F) -> Result<f64>
where
    F: Fn(C64) -> Result<f64>,
{
    // Simpson needs an absolute target; take it from the coarsest Gauss level.
    let scale = {
        let g = QuadratureSpec {
            scheme: super::quadrature::Scheme::TensorPolar,
            ..*q
        };
        box_integral(b, s_lo, &g, 0, 0.0, &f)?.abs()
    };
    let abs_tol = 0.1 * q.tol * scale;
    let integral = converge(
        q,
        what,
        |level| box_integral(b, s_lo, q, level, abs_tol, &f),
        real_gap,
        |v| q.tol * v.abs(),
    )?;
    Ok(integral / b.length)
}

/// `(1/|I|) integral_{S(I)} |phi|^n (1 - |phi|)^r dm`, relative tolerance `q.tol`.
pub fn carleson_box_average(phi: &SelfMap, n: usize, r: f64, arc: &ArcBox, q: &QuadratureSpec) -> Result<f64> {
    if n == 0 || !(r >= 1.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and r >= 1, got n = {n}, r = {r}"
        )));
    }
    let exponent = n as i32;
    average_over_box(arc, 0.0, q, "Carleson box average", |z| {
        let a = phi.eval(z, 0)?.norm().min(1.0);
        Ok(a.powi(exponent) * (1.0 - a).powf(r))
    })
}

/// `mu(D(z))` together with whether the 16 x 16 and 32 x 32 rules disagree by more than 1%.
///
/// `D(z)` is the disc of radius `(1 - |z|)/2` about `z` and `mu = density dm`.
/// Both midpoint polar rules are evaluated and the finer value is returned.
pub fn disc_measure<F>(density: &F, z: C64) -> Result<(f64, bool)>
where
    F: Fn(C64) -> Result<f64>,
{
    let rho = 0.5 * (1.0 - z.norm());
    let rule = |k: usize| -> Result<f64> {
        let mut acc = 0.0;
        for i in 0..k {
            let t = (i as f64 + 0.5) * rho / k as f64;
            for j in 0..k {
                let a = 2.0 * PI * (j as f64 + 0.5) / k as f64;
                acc += density(z + C64::from_polar(t, a))? * t;
            }
        }
        // (1/pi) dt da with dt = rho/k, da = 2 pi/k
        Ok(acc * 2.0 * rho / (k * k) as f64)
    };
    let coarse = rule(16)?;
    let fine = rule(32)?;
    Ok((fine, (fine - coarse).abs() > 0.01 * fine.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LueckingReport {
    pub value: f64,
    /// Outer nodes visited over all refinement levels.
    pub nodes: usize,
    /// How many of them had coarse and fine local rules more than 1% apart.
    pub under_resolved: usize,
}

/// `((1/|I|) integral_{S(I)} mu(D(z))^2 (1 - |z|)^{-2d-3} dm)^{1/2}`, with
/// `1 - |z| >= LUECKING_CUTOFF` and relative tolerance `q.tol` on the square.
pub fn luecking_quantity<F>(density: F, d: usize, arc: &ArcBox, q: &QuadratureSpec) -> Result<LueckingReport>
where
    F: Fn(C64) -> Result<f64>,
{
    if d == 0 {
        return Err(Error::InvalidArgument("Luecking order d must be at least 1".into()));
    }
    if arc.depth() <= LUECKING_CUTOFF {
        return Err(Error::InvalidArgument(format!(
            "arc {} is thinner than the cutoff",
            arc.length
        )));
    }
    let power = -(2.0 * d as f64 + 3.0);
    let nodes = Cell::new(0usize);
    let flagged = Cell::new(0usize);
    let square = average_over_box(arc, LUECKING_CUTOFF, q, "Luecking quantity", |z| {
        let (m, coarse) = disc_measure(&density, z)?;
        nodes.set(nodes.get() + 1);
        flagged.set(flagged.get() + coarse as usize);
        Ok(m * m * (1.0 - z.norm()).powf(power))
    })?;
    Ok(LueckingReport {
        value: square.max(0.0).sqrt(),
        nodes: nodes.get(),
        under_resolved: flagged.get(),
    })
}

/// `|psi|^{n-1} (1 - |z|)^2 |psi'|`, the density fed to the Luecking quantity for `M_psi^n`.
pub fn power_density(psi: &SelfMap, n: usize) -> impl Fn(C64) -> Result<f64> + '_ {
    let e = n.saturating_sub(1) as i32;
    move |z: C64| {
        let s = 1.0 - z.norm();
        Ok(psi.eval(z, 0)?.norm().powi(e) * s * s * psi.eval(z, 1)?.norm())
    }
}
