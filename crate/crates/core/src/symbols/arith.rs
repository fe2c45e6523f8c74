//! Truncated power-series and polynomial arithmetic on coefficient vectors.

use num_complex::Complex64;

type C64 = Complex64;

/// Product of two series, keeping the first `len` coefficients.
pub fn convolve(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == C64::new(0.0, 0.0) {
            continue;
        }
        let span = (len - i).min(b.len());
        for (o, &bj) in out[i..i + span].iter_mut().zip(&b[..span]) {
            *o += ai * bj;
        }
    }
    out
}

/// Full polynomial product.
pub fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    convolve(a, b, a.len() + b.len() - 1)
}

pub fn poly_pow(p: &[C64], m: usize) -> Vec<C64> {
    let mut acc = vec![C64::new(1.0, 0.0)];
    for _ in 0..m {
        acc = poly_mul(&acc, p);
    }
    acc
}

/// Divides the series `num` by the polynomial `den` (den[0] != 0), first `len` terms.
///
/// The recurrence is forward and stable whenever the zeros of `den` lie
/// outside the closed unit disc, which holds for every denominator built here.
pub fn series_div(num: &[C64], den: &[C64], len: usize) -> Vec<C64> {
    assert!(
        !den.is_empty() && den[0] != C64::new(0.0, 0.0),
        "denominator must not vanish at 0"
    );
    let inv0 = den[0].inv();
    let mut out = vec![C64::new(0.0, 0.0); len];
    for k in 0..len {
        let mut acc = num.get(k).copied().unwrap_or_default();
        for j in 1..den.len().min(k + 1) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc * inv0;
    }
    out
}

/// Multiplies a series by the rational function `num/den`, truncated to `len`.
pub fn mul_rational(series: &[C64], num: &[C64], den: &[C64], len: usize) -> Vec<C64> {
    let top = convolve(series, num, len);
    if den.len() == 1 {
        let inv = den[0].inv();
        return top.into_iter().map(|c| c * inv).collect();
    }
    series_div(&top, den, len)
}

/// Reciprocal of a general series with `a[0] != 0`, first `len` terms.
pub fn series_reciprocal(a: &[C64], len: usize) -> Vec<C64> {
    series_div(&[C64::new(1.0, 0.0)], &a[..a.len().min(len.max(1))], len)
}

pub fn poly_eval(p: &[C64], z: C64) -> C64 {
    p.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Coefficients of the `d`-th derivative of a polynomial.
pub fn poly_derivative(p: &[C64], d: usize) -> Vec<C64> {
    if p.len() <= d {
        return Vec::new();
    }
    (d..p.len()).map(|k| p[k] * falling_factorial(k, d)).collect()
}

pub fn poly_add(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
        .collect()
}

pub fn poly_scale(p: &[C64], s: C64) -> Vec<C64> {
    p.iter().map(|&c| c * s).collect()
}

/// k (k-1) ... (k-d+1) as a float.
pub fn falling_factorial(k: usize, d: usize) -> f64 {
    (0..d).fold(1.0, |acc, j| acc * (k - j) as f64)
}

pub fn factorial(d: usize) -> f64 {
    (1..=d).fold(1.0, |acc, j| acc * j as f64)
}

/// Drops trailing exact zeros.
pub fn trim(mut p: Vec<C64>) -> Vec<C64> {
    while p.last() == Some(&C64::new(0.0, 0.0)) {
        p.pop();
    }
    p
}
