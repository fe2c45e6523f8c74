//! Coefficients of compositions `p o phi` for polynomial `p`.

use num_complex::Complex64;

use super::arith;
use super::series::PowerSeries;

type C64 = Complex64;

/// Multiplies the truncated series `s` by `phi`, keeping `len` coefficients.
///
/// Rational symbols are applied as "multiply by the numerator, divide by the
/// denominator", which costs O(len) per factor; other rules fall back to a
/// truncated convolution.
pub fn times_series(s: &[C64], phi: &PowerSeries, len: usize) -> Vec<C64> {
    match phi.as_rational() {
        Some((num, den)) => arith::mul_rational(s, &num, &den, len),
        None => arith::convolve(s, &phi.coeffs(len), len),
    }
}

/// First `count` Taylor coefficients of `phi^m`.
pub fn power_coeffs(phi: &PowerSeries, m: usize, count: usize) -> Vec<C64> {
    let mut acc = vec![C64::new(0.0, 0.0); count];
    if count == 0 {
        return acc;
    }
    acc[0] = C64::new(1.0, 0.0);
    if m == 0 {
        return acc;
    }
    if phi.as_rational().is_some() {
        // One factor at a time: every partial product is a bounded analytic
        // function, so the intermediate coefficients stay small. Expanding
        // num^m first would cancel catastrophically.
        for _ in 0..m {
            acc = times_series(&acc, phi, count);
        }
        return acc;
    }
    // Binary powering with truncated convolutions.
    let base = phi.coeffs(count);
    let mut sq = base;
    let mut e = m;
    loop {
        if e & 1 == 1 {
            acc = arith::convolve(&acc, &sq, count);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = arith::convolve(&sq, &sq, count);
    }
    acc
}

/// First `count` coefficients of `p o phi` by Horner's scheme in series arithmetic.
pub fn compose_coeffs(p: &[C64], phi: &PowerSeries, count: usize) -> Vec<C64> {
    let p = arith::trim(p.to_vec());
    let mut acc = vec![C64::new(0.0, 0.0); count];
    if count == 0 || p.is_empty() {
        return acc;
    }
    acc[0] = *p.last().unwrap();
    for &c in p.iter().rev().skip(1) {
        acc = times_series(&acc, phi, count);
        acc[0] += c;
    }
    acc
}

/// `p o phi` as an explicit series of `count` coefficients.
///
/// Exact (up to rounding) whenever `phi` is rational; otherwise the
/// coefficients of `phi` beyond `count` are irrelevant anyway because the
/// composition of truncated series is exact on the leading `count` terms.
pub fn compose_series(p: &[C64], phi: &PowerSeries, count: usize) -> PowerSeries {
    PowerSeries::explicit(format!("p∘{}", phi.name()), compose_coeffs(p, phi, count))
}

/// Coefficients of `R_mu o phi = 1/(1 - mu phi)` and `R'_mu o phi = mu/(1 - mu phi)^2`.
pub fn resolvent_symbols(phi: &PowerSeries, mu: C64, count: usize) -> (Vec<C64>, Vec<C64>) {
    let one = C64::new(1.0, 0.0);
    match phi.as_rational() {
        Some((num, den)) => {
            // 1/(1 - mu P/Q) = Q / (Q - mu P)
            let d = arith::trim(arith::poly_add(&den, &arith::poly_scale(&num, -mu)));
            let r = arith::series_div(&den, &d, count);
            let q2 = arith::poly_scale(&arith::poly_mul(&den, &den), mu);
            let rp = arith::series_div(&arith::series_div(&q2, &d, count), &d, count);
            (r, rp)
        }
        None => {
            let mut d = phi.coeffs(count).iter().map(|c| -mu * c).collect::<Vec<_>>();
            if d.is_empty() {
                d.push(C64::new(0.0, 0.0));
            }
            d[0] += one;
            let r = arith::series_reciprocal(&d, count);
            let rp = arith::convolve(&r, &r, count).into_iter().map(|c| c * mu).collect();
            (r, rp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn lens() -> PowerSeries {
        PowerSeries::explicit_real("lens", &[0.0, 0.5, -0.5])
    }

    #[test]
    fn square_of_lens() {
        let got = compose_coeffs(&[c(0.0), c(0.0), c(1.0)], &lens(), 5);
        assert_eq!(got, vec![c(0.0), c(0.0), c(0.25), c(-0.5), c(0.25)]);
    }

    #[test]
    fn constant_and_identity_polynomials() {
        let phi = lens();
        let one = compose_coeffs(&[c(1.0)], &phi, 4);
        assert_eq!(one, vec![c(1.0), c(0.0), c(0.0), c(0.0)]);
        let id = compose_coeffs(&[c(0.0), c(1.0)], &phi, 4);
        assert_eq!(id, phi.coeffs(4));
    }

    #[test]
    fn powers_agree_across_paths() {
        let m = PowerSeries::rational("m", vec![c(0.5), c(1.0)], vec![c(1.0), c(0.5)]);
        let closed = PowerSeries::closed("m-closed", 1.0, true, {
            let cs = m.coeffs(64);
            move |k| cs.get(k).copied().unwrap_or_default()
        });
        let a = power_coeffs(&m, 7, 64);
        let b = power_coeffs(&closed, 7, 64);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn high_powers_of_a_disc_automorphism_stay_bounded() {
        // |phi^m| <= 1 on the circle, so the coefficient energy is at most 1.
        let m = PowerSeries::rational("m", vec![c(0.5), c(1.0)], vec![c(1.0), c(0.5)]);
        for p in [50, 200] {
            let energy: f64 = power_coeffs(&m, p, 4096).iter().map(|v| v.norm_sqr()).sum();
            assert!(energy <= 1.0 + 1e-9 && energy > 0.99, "{p}: {energy}");
        }
    }

    #[test]
    fn resolvent_of_identity_is_geometric() {
        let z = PowerSeries::explicit_real("z", &[0.0, 1.0]);
        let mu = c(0.5);
        let (r, rp) = resolvent_symbols(&z, mu, 8);
        for k in 0..8 {
            assert!((r[k].re - 0.5f64.powi(k as i32)).abs() < 1e-15);
            let expect = (k as f64 + 1.0) * 0.5f64.powi(k as i32 + 1);
            assert!((rp[k].re - expect).abs() < 1e-14);
        }
    }
}
