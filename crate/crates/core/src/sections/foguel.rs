//! Generalized Foguel–Hankel operators and the closed forms of their functional calculus.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{SectionMatrix, Structure};
use super::toeplitz::{hankel_section, hankel_times_toeplitz, lower_toeplitz_from, upper_toeplitz_from};
use crate::error::{Error, Result};
use crate::symbols::compose::{compose_coeffs, power_coeffs, resolvent_symbols};
use crate::symbols::series::EVAL_EPSILON;
use crate::symbols::{arith, PowerSeries, SelfMap};

type C64 = Complex64;

/// The pair `(f, phi)` with a truncation plan.
///
/// With `headroom = None`, products are formed at `max(2N, N + span * deg phi)`
/// for polynomial `phi` (which makes them exact) and at `4N` otherwise.
#[derive(Clone, Debug)]
pub struct FoguelHankelSpec {
    pub f: PowerSeries,
    pub phi: SelfMap,
    pub truncation: usize,
    pub headroom: Option<usize>,
}

impl FoguelHankelSpec {
    pub fn new(f: PowerSeries, phi: SelfMap, truncation: usize) -> Self {
        assert!(truncation >= 1, "truncation must be positive");
        FoguelHankelSpec {
            f,
            phi,
            truncation,
            headroom: None,
        }
    }

    pub fn with_headroom(mut self, headroom: usize) -> Result<Self> {
        if headroom < self.truncation {
            return Err(Error::HeadroomInsufficient {
                truncation: self.truncation,
                headroom,
            });
        }
        self.headroom = Some(headroom);
        Ok(self)
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        FoguelHankelSpec {
            truncation,
            headroom: None,
            ..self.clone()
        }
    }

    /// Headroom for a product whose Toeplitz factor has degree `span * deg phi`.
    pub fn headroom_for(&self, span: Option<usize>) -> usize {
        if let Some(k) = self.headroom {
            return k;
        }
        let n = self.truncation;
        match (self.phi.series().degree_hint(), span) {
            (Some(d), Some(s)) => (2 * n).max(n + s * d),
            _ => 4 * n,
        }
    }

    /// True when all coefficients of both symbols are real.
    pub fn is_real(&self) -> bool {
        self.f.is_real() && self.phi.series().is_real()
    }

    pub fn label(&self) -> String {
        format!("({}, {})", self.f.name(), self.phi.name())
    }
}

fn assemble(upper: DMatrix<C64>, corner: DMatrix<C64>, lower: DMatrix<C64>) -> DMatrix<C64> {
    let n = upper.nrows();
    let mut m = DMatrix::<C64>::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&upper);
    m.view_mut((0, n), (n, n)).copy_from(&corner);
    m.view_mut((n, n), (n, n)).copy_from(&lower);
    m
}

/// Block section `[[M*_{tilde psi}, X], [0, M_psi]]` with `X = n * (H_K T_K(c))_N`.
fn block_from_symbols(
    spec: &FoguelHankelSpec,
    diag: &[C64],
    c: &[C64],
    scale: C64,
    headroom: usize,
) -> Result<SectionMatrix> {
    let n = spec.truncation;
    if headroom < n {
        return Err(Error::HeadroomInsufficient {
            truncation: n,
            headroom,
        });
    }
    let fc = spec.f.coeffs(n + headroom);
    let mut corner = hankel_times_toeplitz(&fc, c, n, headroom);
    if scale != C64::new(1.0, 0.0) {
        corner.iter_mut().for_each(|v| *v *= scale);
    }
    let tail = corner_tail_bound(spec, c, headroom) * scale.norm();
    let m = assemble(upper_toeplitz_from(diag, n), corner, lower_toeplitz_from(diag, n));
    Ok(SectionMatrix::new(m, n, headroom, Structure::Block2x2)?.with_tail_bound(tail))
}

/// Frobenius bound for the discarded part of the corner block, by Cauchy–Schwarz
/// on each entry: `N * |f tail from K| * |c tail from K - N + 1|`.
fn corner_tail_bound(spec: &FoguelHankelSpec, c: &[C64], headroom: usize) -> f64 {
    let n = spec.truncation;
    let from = headroom - n + 1;
    let c_tail: f64 = c.iter().skip(from).map(|v| v.norm_sqr()).sum();
    if c_tail == 0.0 {
        return 0.0;
    }
    n as f64 * (spec.f.tail_energy(headroom) * c_tail).sqrt()
}

/// `Gamma_{f,phi}` at order N: `[[coanalytic(phi), hankel(f)], [0, analytic(phi)]]`.
pub fn foguel_hankel(spec: &FoguelHankelSpec) -> SectionMatrix {
    let n = spec.truncation;
    let phi = spec.phi.series().coeffs(n);
    let m = assemble(
        upper_toeplitz_from(&phi, n),
        hankel_section(&spec.f, n).into_entries(),
        lower_toeplitz_from(&phi, n),
    );
    SectionMatrix::new(m, n, n, Structure::Block2x2).expect("headroom equals truncation")
}

/// `Gamma^n = [[M*^n, n J H_f M^{n-1}], [0, M^n]]` compressed from headroom K.
///
/// The diagonal blocks are exact; the corner is the leading block of
/// `H_K * T_K(phi^{n-1})` where the Toeplitz factor is exact because
/// triangular Toeplitz compressions multiply. Columns of `T_K` reach row
/// `K - 1`, so the reported tail bound covers the coefficients of
/// `phi^{n-1}` beyond `K - N`.
pub fn power_closed_form(spec: &FoguelHankelSpec, power: usize) -> Result<SectionMatrix> {
    if power == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let n = spec.truncation;
    let k = spec.headroom_for(Some(power));
    let phi = spec.phi.series();
    let diag = power_coeffs(phi, power, n);
    // Coefficients past K feed the tail estimate only.
    let c = power_coeffs(phi, power - 1, 2 * k);
    block_from_symbols(spec, &diag, &c, C64::new(power as f64, 0.0), k)
}

/// `p(Gamma) = [[M*_{tilde(p∘phi)}, J H_f M_{p'∘phi}], [0, M_{p∘phi}]]`.
pub fn poly_calculus(spec: &FoguelHankelSpec, p: &[C64]) -> Result<SectionMatrix> {
    let p = arith::trim(p.to_vec());
    let n = spec.truncation;
    let deg = p.len().saturating_sub(1);
    let k = spec.headroom_for(Some(deg.max(1)));
    let phi = spec.phi.series();
    let diag = compose_coeffs(&p, phi, n);
    let dp = arith::poly_derivative(&p, 1);
    let c = compose_coeffs(&dp, phi, 2 * k);
    block_from_symbols(spec, &diag, &c, C64::new(1.0, 0.0), k)
}

/// Closed-form section of `(1 - mu Gamma)^{-1} = R_mu(Gamma)`, `R_mu(z) = 1/(1 - mu z)`.
pub fn resolvent_section(spec: &FoguelHankelSpec, mu: C64) -> Result<SectionMatrix> {
    if mu.norm() * spec.phi.sup_bound() >= 1.0 - EVAL_EPSILON {
        return Err(Error::NonConvergent {
            modulus: mu.norm(),
            reason: format!(
                "|mu| * sup|phi| = {} reaches the circle",
                mu.norm() * spec.phi.sup_bound()
            ),
        });
    }
    let n = spec.truncation;
    let k = spec.headroom_for(None);
    let (r, rp) = resolvent_symbols(spec.phi.series(), mu, 2 * k);
    block_from_symbols(spec, &r[..n], &rp, C64::new(1.0, 0.0), k)
}

/// Dense `Gamma_K` and its compression to the index set `{0..N} ∪ {K..K+N}`.
pub fn compress_block2x2(m: &DMatrix<C64>, k: usize, n: usize) -> DMatrix<C64> {
    assert!(m.nrows() == 2 * k && n <= k);
    let idx = |a: usize| if a < n { a } else { k + a - n };
    DMatrix::from_fn(2 * n, 2 * n, |i, j| m[(idx(i), idx(j))])
}
