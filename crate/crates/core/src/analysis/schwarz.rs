//! Sampled checks of the Schwarz–Pick type inequalities for self-maps.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::arith::factorial;
use crate::symbols::series::MAX_DERIVATIVE;
use crate::symbols::SelfMap;

type C64 = Complex64;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5c4a_7e2b_0d15_c001;

/// Worst slacks over a sample of the disc; negative values are violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzPickReport {
    pub map: String,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    /// `(1 + |phi(0)|)/(1 - |phi(0)|) (1 - |phi|^2) - (1 - |z|^2)`.
    pub worst_first: f64,
    pub worst_first_at: [f64; 2],
    /// `d! (1 - |phi|^2)(1 + |z|)^{d-1} - (1 - |z|^2)|phi^{(d)}|`.
    pub worst_second: f64,
    pub worst_second_at: [f64; 2],
    /// The first inequality with the factor inverted, `(1 - |phi(0)|)/(1 + |phi(0)|)`.
    ///
    /// It fails whenever `phi(0) != 0` at points near the origin; kept for comparison.
    pub worst_first_inverted: f64,
}

impl SchwarzPickReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.worst_first >= -tol && self.worst_second >= -tol
    }
}

/// Samples uniform in area (`r = sqrt(u)`) from a ChaCha8 stream seeded with `seed`.
pub fn disc_samples(count: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.random();
            let t: f64 = rng.random();
            C64::from_polar(u.sqrt(), 2.0 * PI * t)
        })
        .collect()
}

/// Worst slack of both inequalities for `phi` and derivative order `d` over `samples` points.
pub fn schwarz_pick_check(phi: &SelfMap, d: usize, samples: usize, seed: u64) -> Result<SchwarzPickReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if d == 0 || d > MAX_DERIVATIVE {
        return Err(Error::InvalidArgument(format!(
            "order {d} outside 1..={MAX_DERIVATIVE}"
        )));
    }
    let a0 = phi.eval(C64::new(0.0, 0.0), 0)?.norm();
    if a0 >= 1.0 {
        return Err(Error::InvalidArgument("phi(0) must lie in the open disc".into()));
    }
    let factor = (1.0 + a0) / (1.0 - a0);
    let fact = factorial(d);
    let mut report = SchwarzPickReport {
        map: phi.name().to_string(),
        order: d,
        samples,
        seed,
        worst_first: f64::INFINITY,
        worst_first_at: [0.0; 2],
        worst_second: f64::INFINITY,
        worst_second_at: [0.0; 2],
        worst_first_inverted: f64::INFINITY,
    };
    for z in disc_samples(samples, seed) {
        let w = phi.eval(z, 0)?;
        let dw = phi.eval(z, d)?.norm();
        let gap_z = 1.0 - z.norm_sqr();
        let gap_w = 1.0 - w.norm_sqr();
        let first = factor * gap_w - gap_z;
        let second = fact * gap_w * (1.0 + z.norm()).powi(d as i32 - 1) - gap_z * dw;
        if first < report.worst_first {
            report.worst_first = first;
            report.worst_first_at = [z.re, z.im];
        }
        if second < report.worst_second {
            report.worst_second = second;
            report.worst_second_at = [z.re, z.im];
        }
        report.worst_first_inverted = report.worst_first_inverted.min(gap_w / factor - gap_z);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::catalog::{catalog_maps, constant, identity_map, moebius};

    #[test]
    fn samples_are_inside_and_reproducible() {
        let a = disc_samples(1000, 7);
        assert!(a.iter().all(|z| z.norm() < 1.0));
        assert_eq!(a, disc_samples(1000, 7));
        assert_ne!(a, disc_samples(1000, 8));
        // uniform in area: about a quarter fall inside |z| < 1/2
        let inner = a.iter().filter(|z| z.norm() < 0.5).count();
        assert!((200..300).contains(&inner), "{inner}");
    }

    #[test]
    fn zero_map_first_slack_is_the_squared_modulus() {
        let zero = constant(C64::new(0.0, 0.0)).unwrap();
        let r = schwarz_pick_check(&zero, 1, 500, DEFAULT_SEED).unwrap();
        let min_sq = disc_samples(500, DEFAULT_SEED)
            .iter()
            .map(|z| z.norm_sqr())
            .fold(f64::INFINITY, f64::min);
        assert!((r.worst_first - min_sq).abs() < 1e-15);
    }

    #[test]
    fn identity_is_sharp_for_first_order() {
        let r = schwarz_pick_check(&identity_map(), 1, 2000, DEFAULT_SEED).unwrap();
        assert!(r.worst_second.abs() < 1e-15);
        assert!(r.worst_first.abs() < 1e-15);
    }

    #[test]
    fn catalog_maps_satisfy_both_inequalities() {
        for phi in catalog_maps() {
            for d in 1..=4 {
                let r = schwarz_pick_check(&phi, d, 5000, DEFAULT_SEED).unwrap();
                assert!(r.passes(1e-12), "{} d={d}: {r:?}", phi.name());
            }
        }
    }

    #[test]
    fn inverted_factor_fails_off_the_origin() {
        let r = schwarz_pick_check(&moebius(C64::new(0.5, 0.0)).unwrap(), 1, 5000, DEFAULT_SEED).unwrap();
        // near z = 0 it reads 1/3 * 3/4 - 1 < 0
        assert!(r.worst_first_inverted < -0.5);
        assert!(r.worst_first >= -1e-12);
    }

    #[test]
    fn second_inequality_needs_small_moebius_parameter() {
        // For (a + z)/(1 + a z) and d >= 2 the inequality reduces to
        // |a| <= (1 + |z|)|1 + a z|, which fails near z = -1 once a > 2/3.
        let r = schwarz_pick_check(&moebius(C64::new(0.9, 0.0)).unwrap(), 2, 20_000, DEFAULT_SEED).unwrap();
        assert!(r.worst_second < 0.0);
        let ok = schwarz_pick_check(&moebius(C64::new(0.6, 0.0)).unwrap(), 2, 20_000, DEFAULT_SEED).unwrap();
        assert!(ok.worst_second >= -1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(schwarz_pick_check(&identity_map(), 0, 10, 1).is_err());
        assert!(schwarz_pick_check(&identity_map(), 5, 10, 1).is_err());
        assert!(schwarz_pick_check(&identity_map(), 1, 0, 1).is_err());
    }
}
