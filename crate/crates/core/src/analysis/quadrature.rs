use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::witness::adaptive_simpson;

/// How radial integrals are carried out. Angular integrals always use a fixed rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Composite Gauss–Legendre on panels graded toward the delicate endpoint.
    TensorPolar,
    /// Adaptive Simpson in the radial direction.
    AdaptiveSimpson,
}

/// Node counts and tolerance for the disc quadratures.
///
/// Every integral is evaluated at successive levels, each doubling the node
/// counts, until two consecutive levels agree within `tol`; after
/// `max_refinements` doublings the computation fails. Whether `tol` is
/// absolute or relative is stated by each routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Gauss points per radial panel.
    pub radial: usize,
    /// Angular nodes over the full angular range.
    pub angular: usize,
    pub tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            scheme: Scheme::TensorPolar,
            radial: 16,
            angular: 64,
            tol: 1e-10,
            max_refinements: 4,
        }
    }
}

impl QuadratureSpec {
    pub fn new(radial: usize, angular: usize, tol: f64) -> Self {
        QuadratureSpec {
            radial,
            angular,
            tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial < 8 || self.angular < 8 {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs at least 8 nodes per direction, got {} x {}",
                self.radial, self.angular
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance {} must be positive and finite",
                self.tol
            )));
        }
        Ok(())
    }

    /// Node counts at refinement `level`.
    pub fn at_level(&self, level: usize) -> (usize, usize) {
        (self.radial << level, self.angular << level)
    }
}

/// An arc of the circle and its Carleson box
/// `S(I) = { r e^{it} : e^{it} in I, 1 - r <= |I| }`, lengths in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcBox {
    pub center: f64,
    pub length: f64,
}

impl ArcBox {
    pub fn new(center: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= 2.0 * PI) || !center.is_finite() {
            return Err(Error::InvalidArgument(format!("arc length {length} outside (0, 2pi]")));
        }
        Ok(ArcBox { center, length })
    }

    /// Arcs of length `2^-k`, `k = 0..=k_max`, all centered at `center`.
    pub fn dyadic_family(center: f64, k_max: u32) -> Vec<ArcBox> {
        (0..=k_max)
            .map(|k| ArcBox {
                center,
                length: 0.5f64.powi(k as i32),
            })
            .collect()
    }

    pub fn angles(&self) -> (f64, f64) {
        (self.center - 0.5 * self.length, self.center + 0.5 * self.length)
    }

    /// Depth of the box: `1 - r` ranges over `(0, min(|I|, 1)]`.
    pub fn depth(&self) -> f64 {
        self.length.min(1.0)
    }

    /// `m(S(I))` with `m` the area measure normalized to `m(D) = 1`.
    pub fn area(&self) -> f64 {
        let inner = 1.0 - self.depth();
        self.length / (2.0 * PI) * (1.0 - inner * inner)
    }
}

fn gauss(points: usize) -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(points).expect("at least one point"))
}

/// Nodes and weights of `rule` mapped to each panel.
pub(crate) fn composite(panels: &[(f64, f64)], points: usize) -> Vec<(f64, f64)> {
    let rule = gauss(points);
    let mut out = Vec::with_capacity(panels.len() * points);
    for &(a, b) in panels {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for &(x, w) in rule.as_node_weight_pairs() {
            out.push((mid + half * x, half * w));
        }
    }
    out
}

/// Panels covering `[lo, hi]` whose lengths halve toward `lo`, down to `hi - lo` times `2^-levels`.
pub(crate) fn graded_toward_lo(lo: f64, hi: f64, levels: usize) -> Vec<(f64, f64)> {
    let h = hi - lo;
    let mut panels = vec![(lo, lo + h * 0.5f64.powi(levels as i32))];
    for k in (0..levels).rev() {
        panels.push((lo + h * 0.5f64.powi(k as i32 + 1), lo + h * 0.5f64.powi(k as i32)));
    }
    panels
}

/// `n` equal panels on `[a, b]`.
pub(crate) fn uniform(a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            (
                a + (b - a) * i as f64 / n as f64,
                a + (b - a) * (i + 1) as f64 / n as f64,
            )
        })
        .collect()
}

/// `integral g` over the union of `panels`, by Gauss or adaptive Simpson according to the scheme.
pub(crate) fn radial_integral<G>(
    q: &QuadratureSpec,
    level: usize,
    panels: &[(f64, f64)],
    abs_tol: f64,
    g: G,
) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    match q.scheme {
        Scheme::TensorPolar => {
            let mut acc = 0.0;
            for (x, w) in composite(panels, q.at_level(level).0) {
                acc += w * g(x)?;
            }
            Ok(acc)
        }
        Scheme::AdaptiveSimpson => {
            let share = abs_tol / panels.len() as f64;
            panels.iter().map(|&(a, b)| adaptive_simpson(&g, a, b, share, 50)).sum()
        }
    }
}

/// Repeats `eval(level)` with doubled nodes until consecutive levels differ by at most `accept(value)`.
pub(crate) fn converge<T, E, A>(
    q: &QuadratureSpec,
    what: &str,
    mut eval: E,
    dist: fn(T, T) -> f64,
    accept: A,
) -> Result<T>
where
    T: Copy,
    E: FnMut(usize) -> Result<T>,
    A: Fn(T) -> f64,
{
    q.validate()?;
    let mut prev = eval(0)?;
    let mut gap = f64::INFINITY;
    for level in 1..=q.max_refinements {
        let next = eval(level)?;
        gap = dist(next, prev);
        if gap <= accept(next) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureFailure(format!(
        "{what}: levels still differ by {gap:e} after {} refinements",
        q.max_refinements
    )))
}

pub(crate) fn real_gap(a: f64, b: f64) -> f64 {
    (a - b).abs()
}
