use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::arith;
use crate::error::{Error, Result};

type C64 = Complex64;

/// Closest approach to the unit circle at which unbounded-degree rules are summed.
pub const EVAL_EPSILON: f64 = 1e-6;

/// Default absolute tail tolerance for [`PowerSeries::eval`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Hard cap on the number of terms summed for an unbounded rule.
pub const MAX_TERMS: usize = 1_000_000;

/// Highest derivative order supported by the evaluators.
pub const MAX_DERIVATIVE: usize = 4;

/// How the Taylor coefficients of a series are produced.
#[derive(Clone)]
pub enum CoefficientRule {
    /// Finitely supported list, zero-padded beyond its length.
    Explicit(Vec<C64>),
    /// Expansion of `num / den` about 0; `den[0] != 0` and the zeros of
    /// `den` lie outside the closed disc.
    Rational { num: Vec<C64>, den: Vec<C64> },
    /// Index rule `k -> a_k` with the uniform bound `|a_k| <= bound`.
    Closed {
        rule: Arc<dyn Fn(usize) -> C64 + Send + Sync>,
        bound: f64,
        real: bool,
    },
}

impl fmt::Debug for CoefficientRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRule::Explicit(c) => f.debug_tuple("Explicit").field(c).finish(),
            CoefficientRule::Rational { num, den } => {
                f.debug_struct("Rational").field("num", num).field("den", den).finish()
            }
            CoefficientRule::Closed { bound, real, .. } => f
                .debug_struct("Closed")
                .field("bound", bound)
                .field("real", real)
                .finish_non_exhaustive(),
        }
    }
}

/// An analytic function on the disc, given by its Taylor coefficient rule.
#[derive(Clone, Debug)]
pub struct PowerSeries {
    rule: CoefficientRule,
    name: String,
}

impl PowerSeries {
    pub fn explicit(name: impl Into<String>, coeffs: Vec<C64>) -> Self {
        PowerSeries {
            rule: CoefficientRule::Explicit(arith::trim(coeffs)),
            name: name.into(),
        }
    }

    pub fn explicit_real(name: impl Into<String>, coeffs: &[f64]) -> Self {
        Self::explicit(name, coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// `num / den`. Panics if `den(0) == 0`.
    pub fn rational(name: impl Into<String>, num: Vec<C64>, den: Vec<C64>) -> Self {
        assert!(
            den.first().is_some_and(|d| *d != C64::new(0.0, 0.0)),
            "rational series needs den(0) != 0"
        );
        let den = arith::trim(den);
        let num = arith::trim(num);
        if den.len() == 1 {
            let inv = den[0].inv();
            return Self::explicit(name, num.into_iter().map(|c| c * inv).collect());
        }
        PowerSeries {
            rule: CoefficientRule::Rational { num, den },
            name: name.into(),
        }
    }

    pub fn closed<F>(name: impl Into<String>, bound: f64, real: bool, rule: F) -> Self
    where
        F: Fn(usize) -> C64 + Send + Sync + 'static,
    {
        PowerSeries {
            rule: CoefficientRule::Closed {
                rule: Arc::new(rule),
                bound,
                real,
            },
            name: name.into(),
        }
    }

    pub fn zero() -> Self {
        Self::explicit("zero", Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rule(&self) -> &CoefficientRule {
        &self.rule
    }

    /// Degree when finitely supported, `None` for unbounded rules.
    pub fn degree_hint(&self) -> Option<usize> {
        match &self.rule {
            CoefficientRule::Explicit(c) => Some(c.len().saturating_sub(1)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.rule, CoefficientRule::Explicit(c) if c.is_empty())
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        let real = |v: &[C64]| v.iter().all(|c| c.im == 0.0);
        match &self.rule {
            CoefficientRule::Explicit(c) => real(c),
            CoefficientRule::Rational { num, den } => real(num) && real(den),
            CoefficientRule::Closed { real, .. } => *real,
        }
    }

    /// Rational form `(num, den)` when one is known exactly.
    pub fn as_rational(&self) -> Option<(Vec<C64>, Vec<C64>)> {
        match &self.rule {
            CoefficientRule::Explicit(c) => Some((c.clone(), vec![C64::new(1.0, 0.0)])),
            CoefficientRule::Rational { num, den } => Some((num.clone(), den.clone())),
            CoefficientRule::Closed { .. } => None,
        }
    }

    /// The `k`-th Taylor coefficient.
    pub fn coefficient(&self, k: usize) -> C64 {
        match &self.rule {
            CoefficientRule::Explicit(c) => c.get(k).copied().unwrap_or_default(),
            CoefficientRule::Rational { num, den } => arith::series_div(num, den, k + 1)[k],
            CoefficientRule::Closed { rule, .. } => rule(k),
        }
    }

    /// The first `count` Taylor coefficients.
    pub fn coeffs(&self, count: usize) -> Vec<C64> {
        match &self.rule {
            CoefficientRule::Explicit(c) => (0..count).map(|k| c.get(k).copied().unwrap_or_default()).collect(),
            CoefficientRule::Rational { num, den } => arith::series_div(num, den, count),
            CoefficientRule::Closed { rule, .. } => (0..count).map(|k| rule(k)).collect(),
        }
    }

    /// Coefficient rule `k -> conj(a_k)`.
    pub fn tilde(&self) -> PowerSeries {
        let conj = |v: &[C64]| v.iter().map(|c| c.conj()).collect::<Vec<_>>();
        let rule = match &self.rule {
            CoefficientRule::Explicit(c) => CoefficientRule::Explicit(conj(c)),
            CoefficientRule::Rational { num, den } => CoefficientRule::Rational {
                num: conj(num),
                den: conj(den),
            },
            CoefficientRule::Closed { rule, bound, real } => {
                let inner = Arc::clone(rule);
                CoefficientRule::Closed {
                    rule: Arc::new(move |k| inner(k).conj()),
                    bound: *bound,
                    real: *real,
                }
            }
        };
        PowerSeries {
            rule,
            name: format!("tilde({})", self.name),
        }
    }

    /// Multiplication by `z^m`.
    pub fn shifted_up(&self, m: usize) -> PowerSeries {
        let shift = |v: &[C64]| {
            if v.is_empty() {
                return Vec::new();
            }
            let mut out = vec![C64::new(0.0, 0.0); m];
            out.extend_from_slice(v);
            out
        };
        let rule = match &self.rule {
            CoefficientRule::Explicit(c) => CoefficientRule::Explicit(shift(c)),
            CoefficientRule::Rational { num, den } => CoefficientRule::Rational {
                num: shift(num),
                den: den.clone(),
            },
            CoefficientRule::Closed { rule, bound, real } => {
                let inner = Arc::clone(rule);
                CoefficientRule::Closed {
                    rule: Arc::new(move |k| if k < m { C64::new(0.0, 0.0) } else { inner(k - m) }),
                    bound: *bound,
                    real: *real,
                }
            }
        };
        PowerSeries {
            rule,
            name: format!("z^{m}*{}", self.name),
        }
    }

    /// Multiplication by a real scalar.
    pub fn scaled(&self, t: f64) -> PowerSeries {
        let sc = |v: &[C64]| v.iter().map(|c| c * t).collect::<Vec<_>>();
        let rule = match &self.rule {
            CoefficientRule::Explicit(c) => CoefficientRule::Explicit(arith::trim(sc(c))),
            CoefficientRule::Rational { num, den } => CoefficientRule::Rational {
                num: sc(num),
                den: den.clone(),
            },
            CoefficientRule::Closed { rule, bound, real } => {
                let inner = Arc::clone(rule);
                CoefficientRule::Closed {
                    rule: Arc::new(move |k| inner(k) * t),
                    bound: bound * t.abs(),
                    real: *real,
                }
            }
        };
        PowerSeries {
            rule,
            name: format!("{t}*{}", self.name),
        }
    }

    /// Upper estimate of `sum_{k >= from} |a_k|^2`.
    pub fn tail_energy(&self, from: usize) -> f64 {
        match &self.rule {
            CoefficientRule::Explicit(c) => c.iter().skip(from).map(|v| v.norm_sqr()).sum(),
            CoefficientRule::Rational { num, den } => {
                // Geometric decay: sum a window and stop once it is negligible.
                let window = 4096;
                let coeffs = arith::series_div(num, den, from + window);
                let s: f64 = coeffs[from..].iter().map(|v| v.norm_sqr()).sum();
                let last = coeffs.last().map(|v| v.norm_sqr()).unwrap_or(0.0);
                s + last * window as f64
            }
            CoefficientRule::Closed { rule, bound, .. } => {
                // Sum a long window, then bound the remainder with the O(1/k) profile.
                let window = 1 << 16;
                let s: f64 = (from..from + window).map(|k| rule(k).norm_sqr()).sum();
                let end = (from + window) as f64;
                let k_last = end.max(1.0);
                s + bound * bound * (8.0 / k_last).min(1.0)
            }
        }
    }

    /// `s^{(d)}(z)` with the default tail tolerance.
    pub fn eval(&self, z: C64, d: usize) -> Result<C64> {
        self.eval_with_tol(z, d, DEFAULT_TAIL_TOL)
    }

    /// `s^{(d)}(z)` with absolute truncation error at most `tail_tol`.
    pub fn eval_with_tol(&self, z: C64, d: usize, tail_tol: f64) -> Result<C64> {
        if d > MAX_DERIVATIVE {
            return Err(Error::InvalidArgument(format!(
                "derivative order {d} exceeds {MAX_DERIVATIVE}"
            )));
        }
        match &self.rule {
            CoefficientRule::Explicit(c) => Ok(horner_derivative(c, z, d)),
            CoefficientRule::Rational { num, den } => eval_rational(num, den, z, d),
            CoefficientRule::Closed { rule, bound, .. } => {
                let rho = z.norm();
                if rho > 1.0 - EVAL_EPSILON {
                    return Err(Error::NonConvergent {
                        modulus: rho,
                        reason: format!("unbounded rule refused beyond 1 - {EVAL_EPSILON:e}"),
                    });
                }
                let terms = tail_length(rho, d, *bound, tail_tol)?;
                let mut acc = C64::new(0.0, 0.0);
                let mut zp = C64::new(1.0, 0.0);
                for k in d..terms {
                    acc += rule(k) * arith::falling_factorial(k, d) * zp;
                    zp *= z;
                }
                Ok(acc)
            }
        }
    }
}

/// Horner evaluation of the `d`-th derivative of an explicit polynomial.
fn horner_derivative(c: &[C64], z: C64, d: usize) -> C64 {
    if c.len() <= d {
        return C64::new(0.0, 0.0);
    }
    let mut acc = C64::new(0.0, 0.0);
    for k in (d..c.len()).rev() {
        acc = acc * z + c[k] * arith::falling_factorial(k, d);
    }
    acc
}

/// Derivatives of `P/Q` from `h Q = P` by Leibniz' rule.
fn eval_rational(num: &[C64], den: &[C64], z: C64, d: usize) -> Result<C64> {
    let q0 = arith::poly_eval(den, z);
    let scale: f64 = den.iter().map(|c| c.norm()).sum();
    if q0.norm() <= 1e-14 * scale {
        return Err(Error::NonConvergent {
            modulus: z.norm(),
            reason: "pole of rational symbol".into(),
        });
    }
    let qd: Vec<C64> = (0..=d).map(|j| horner_derivative(den, z, j)).collect();
    let mut h = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut acc = horner_derivative(num, z, m);
        for j in 1..=m {
            acc -= qd[j] * binomial(m, j) * h[m - j];
        }
        h.push(acc / q0);
    }
    Ok(h[d])
}

fn binomial(n: usize, k: usize) -> f64 {
    arith::falling_factorial(n, k) / arith::factorial(k)
}

/// Number of terms K with `bound * d! (K+d)^d rho^(K-d) / (1-rho)^(d+1) <= tol`.
///
/// For `d = 0` this is `ceil(log(tol (1 - rho) / bound) / log rho)`.
pub fn tail_length(rho: f64, d: usize, bound: f64, tol: f64) -> Result<usize> {
    if rho == 0.0 || bound == 0.0 {
        return Ok(d + 1);
    }
    let lr = rho.ln();
    let tail = |k: usize| -> f64 {
        let kf = k as f64;
        (bound.ln() + arith::factorial(d).ln() + d as f64 * (kf + d as f64).ln() + (kf - d as f64) * lr
            - (d as f64 + 1.0) * (1.0 - rho).ln())
        .exp()
    };
    let base = ((tol * (1.0 - rho) / bound).ln() / lr).ceil().max(1.0) as usize;
    let mut k = base.max(d + 1);
    while tail(k) > tol {
        if k > MAX_TERMS {
            return Err(Error::NonConvergent {
                modulus: rho,
                reason: format!("tail needs more than {MAX_TERMS} terms for tol {tol:e}"),
            });
        }
        k += k / 8 + 1;
    }
    Ok(k.min(MAX_TERMS))
}
