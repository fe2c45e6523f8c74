//! The Hilbert matrix as an integral pairing on `(0, 1)`, the diameter
//! inequality it implies, and the Volterra-type operator `V_phi`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{converge, radial_integral, uniform, QuadratureSpec};
use crate::error::{Error, Result};
use crate::symbols::compose::{compose_coeffs, power_coeffs};
use crate::symbols::{PowerSeries, SelfMap};

type C64 = Complex64;

fn polynomial_coeffs(s: &PowerSeries) -> Result<Vec<C64>> {
    s.degree_hint()
        .map(|d| s.coeffs(d + 1))
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` must be a polynomial", s.name())))
}

fn horner(c: &[C64], t: f64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * t + x)
}

/// `sum_{n,m} a_m conj(b_n) / (n + m + 1)`, the Hilbert matrix pairing of two coefficient vectors.
pub fn hilbert_form(a: &[C64], b: &[C64]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (n, bn) in b.iter().enumerate() {
        for (m, am) in a.iter().enumerate() {
            acc += am * bn.conj() / (n + m + 1) as f64;
        }
    }
    acc
}

/// `integral_0^1 u(t) conj(v(t)) dt` by Gauss–Legendre with `points` nodes.
pub fn segment_integral(u: &[C64], v: &[C64], points: usize) -> C64 {
    let q = QuadratureSpec::new(points.max(8), 8, 1.0);
    let panels = uniform(0.0, 1.0, 1);
    let part = |pick: fn(C64) -> f64| {
        radial_integral(&q, 0, &panels, 0.0, |t| Ok(pick(horner(u, t) * horner(v, t).conj())))
            .expect("infallible integrand")
    };
    C64::new(part(|z| z.re), part(|z| z.im))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairingCheck {
    pub matrix: C64,
    pub integral: C64,
    pub discrepancy: f64,
}

/// Compares `<H_N u, v>` with `integral_0^1 u conj(v) dt` for polynomials of degree below `n`.
///
/// The segment integral is refined until consecutive levels agree within
/// `q.tol` (absolute); its starting node count is `q.radial`.
pub fn hilbert_pairing_check(u: &PowerSeries, v: &PowerSeries, n: usize, q: &QuadratureSpec) -> Result<PairingCheck> {
    let a = polynomial_coeffs(u)?;
    let b = polynomial_coeffs(v)?;
    if a.len() > n || b.len() > n {
        return Err(Error::InvalidArgument(format!(
            "degrees must stay below the truncation {n}"
        )));
    }
    let matrix = hilbert_form(&a, &b);
    let panels = uniform(0.0, 1.0, 1);
    let level = |l: usize| -> Result<C64> {
        let part = |pick: fn(C64) -> f64| {
            radial_integral(q, l, &panels, 0.5 * q.tol, |t| {
                Ok(pick(horner(&a, t) * horner(&b, t).conj()))
            })
        };
        Ok(C64::new(part(|z| z.re)?, part(|z| z.im)?))
    };
    let integral = converge(q, "segment pairing", level, |x: C64, y: C64| (x - y).norm(), |_| q.tol)?;
    Ok(PairingCheck {
        matrix,
        integral,
        discrepancy: (matrix - integral).norm(),
    })
}

/// Both sides of `integral_0^1 |v|^2 dt <= pi sum |v^(k)|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FejerRiesz {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// The left side is the Hilbert form of the coefficients, exact up to rounding.
pub fn fejer_riesz_check(v: &PowerSeries) -> Result<FejerRiesz> {
    let c = polynomial_coeffs(v)?;
    let lhs = hilbert_form(&c, &c).re;
    let rhs = PI * c.iter().map(|x| x.norm_sqr()).sum::<f64>();
    Ok(FejerRiesz {
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

/// Leading coefficients of `V_phi f(z) = integral_0^z f(phi(t)) dt`.
#[derive(Debug, Clone)]
pub struct VPhiExpansion {
    pub series: PowerSeries,
    /// Degree at which `f` was truncated before composing.
    pub degree_cap: usize,
    /// Size of the next block of discarded terms, weighted by the largest
    /// leading coefficient of `phi^cap`. Zero when the truncation is exact.
    pub tail_estimate: f64,
}

/// First `count` Taylor coefficients of `V_phi f`.
///
/// When `phi(0) = 0` the coefficient of `z^k` in `f o phi` only involves
/// `f^(0..=k)`, and truncating `f` at degree `count` is exact. Otherwise `f`
/// is truncated at `max(8 count, 64)` (or its own degree) and the discarded
/// part is estimated.
pub fn v_phi_coefficients(f: &PowerSeries, phi: &SelfMap, count: usize) -> Result<VPhiExpansion> {
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one coefficient".into()));
    }
    let inner = count - 1;
    let centered = phi.series().coefficient(0) == C64::new(0.0, 0.0);
    let cap = match f.degree_hint() {
        Some(d) => d,
        None if centered => inner,
        None => (8 * count).max(64),
    };
    let composed = compose_coeffs(&f.coeffs(cap + 1), phi.series(), inner);
    let mut coeffs = vec![C64::new(0.0, 0.0); count];
    for (k, c) in composed.iter().enumerate() {
        coeffs[k + 1] = c / (k + 1) as f64;
    }
    let exact = f.degree_hint().is_some() || centered;
    let tail_estimate = if exact {
        0.0
    } else {
        let lead = power_coeffs(phi.series(), cap + 1, inner.max(1))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        lead * (cap + 1..=2 * cap).map(|k| f.coefficient(k).norm()).sum::<f64>()
    };
    Ok(VPhiExpansion {
        series: PowerSeries::explicit(format!("V[{}]({})", phi.name(), f.name()), coeffs),
        degree_cap: cap,
        tail_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::catalog::{constant, identity_map, lens};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(c: &[f64]) -> PowerSeries {
        PowerSeries::explicit_real("p", c)
    }

    fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> PowerSeries {
        PowerSeries::explicit(
            "r",
            (0..=degree)
                .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn pairing_of_low_monomials() {
        let q = QuadratureSpec::default();
        let one = poly(&[1.0]);
        let z = poly(&[0.0, 1.0]);
        let a = hilbert_pairing_check(&one, &one, 1, &q).unwrap();
        assert_eq!(a.matrix, C64::new(1.0, 0.0));
        assert!(a.discrepancy < 1e-15);
        let b = hilbert_pairing_check(&one, &z, 2, &q).unwrap();
        assert_eq!(b.matrix, C64::new(0.5, 0.0));
        assert!((b.integral - 0.5).norm() < 1e-15);
        assert!(hilbert_pairing_check(&z, &z, 1, &q).is_err());
    }

    #[test]
    fn random_pairings_match_the_rational_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = QuadratureSpec::new(8, 8, 1e-12);
        for _ in 0..20 {
            let u = random_poly(&mut rng, 32);
            let v = random_poly(&mut rng, 32);
            // oracle: the Hilbert form written out with exact denominators
            let (a, b) = (u.coeffs(33), v.coeffs(33));
            let mut want = C64::new(0.0, 0.0);
            for m in 0..33 {
                for n in 0..33 {
                    want += a[m] * b[n].conj() * (1.0 / (n + m + 1) as f64);
                }
            }
            let r = hilbert_pairing_check(&u, &v, 33, &q).unwrap();
            assert!((r.integral - want).norm() < 1e-8, "{} vs {want}", r.integral);
        }
    }

    #[test]
    fn pairing_error_vanishes_as_nodes_double() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_poly(&mut rng, 32);
        let v = random_poly(&mut rng, 32);
        let (a, b) = (u.coeffs(33), v.coeffs(33));
        let exact = hilbert_form(&a, &b);
        let errs: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&p| (segment_integral(&a, &b, p) - exact).norm())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] <= (w[0] / 4.0).max(1e-13), "{errs:?}");
        }
        assert!(errs[3] < 1e-13);
    }

    #[test]
    fn fejer_riesz_small_cases() {
        let one = fejer_riesz_check(&poly(&[1.0])).unwrap();
        assert_eq!(one.lhs, 1.0);
        assert!((one.slack - (PI - 1.0)).abs() < 1e-15);
        let z = fejer_riesz_check(&poly(&[0.0, 1.0])).unwrap();
        assert!((z.lhs - 1.0 / 3.0).abs() < 1e-16 && z.rhs == PI);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!(fejer_riesz_check(&random_poly(&mut rng, 16)).unwrap().slack >= 0.0);
        }
    }

    #[test]
    fn v_phi_of_the_geometric_series_under_the_lens() {
        let geometric = PowerSeries::closed("1/(1-z)", 1.0, true, |_| C64::new(1.0, 0.0));
        let v = v_phi_coefficients(&geometric, &lens(), 6).unwrap();
        // integral of sum ((t - t^2)/2)^k, expanded by hand
        let want = [0.0, 1.0, 0.25, -1.0 / 12.0, -3.0 / 32.0, -1.0 / 80.0];
        let got = v.series.coeffs(6);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < 1e-15, "{got:?}");
        }
        assert_eq!(v.tail_estimate, 0.0);
    }

    #[test]
    fn v_phi_trivial_cases() {
        let v = v_phi_coefficients(&poly(&[1.0]), &lens(), 4).unwrap();
        assert_eq!(
            v.series.coeffs(4),
            vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0)
            ]
        );
        let f = poly(&[3.0, 2.0, 6.0]);
        let v = v_phi_coefficients(&f, &identity_map(), 5).unwrap();
        let got: Vec<f64> = v.series.coeffs(5).iter().map(|c| c.re).collect();
        assert_eq!(got, vec![0.0, 3.0, 1.0, 2.0, 0.0]);
    }

    #[test]
    fn v_phi_with_an_off_center_map() {
        // f = 1/(1-z), phi = c: f(phi) = 1/(1-c), so V = z/(1-c)
        let geometric = PowerSeries::closed("1/(1-z)", 1.0, true, |_| C64::new(1.0, 0.0));
        let c = 0.25;
        let v = v_phi_coefficients(&geometric, &constant(C64::new(c, 0.0)).unwrap(), 3).unwrap();
        assert!((v.series.coefficient(1).re - 1.0 / (1.0 - c)).abs() < 1e-15);
        assert!(v.tail_estimate < 1e-15);
        assert_eq!(v.degree_cap, 64);
    }
}
