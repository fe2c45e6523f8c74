//! Multiplication and Hankel operators in the monomial basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{SectionMatrix, Structure};
use crate::symbols::catalog;
use crate::symbols::PowerSeries;

type C64 = Complex64;

/// Lower-triangular Toeplitz section with first column `c`.
pub fn lower_toeplitz_from(c: &[C64], n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i >= j {
            c.get(i - j).copied().unwrap_or_default()
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Upper-triangular Toeplitz section with first row `c`.
pub fn upper_toeplitz_from(c: &[C64], n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |i, j| {
        if j >= i {
            c.get(j - i).copied().unwrap_or_default()
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `M_phi`: entry `(n, m) = phi_hat(n - m)` for `n >= m`.
pub fn analytic_toeplitz(phi: &PowerSeries, n: usize) -> SectionMatrix {
    SectionMatrix::new(lower_toeplitz_from(&phi.coeffs(n), n), n, n, Structure::LowerToeplitz).expect("square section")
}

/// `M*_{tilde phi}`: entry `(n, m) = phi_hat(m - n)` for `m >= n`.
pub fn coanalytic_toeplitz(phi: &PowerSeries, n: usize) -> SectionMatrix {
    SectionMatrix::new(upper_toeplitz_from(&phi.coeffs(n), n), n, n, Structure::UpperToeplitz).expect("square section")
}

/// `J H_f`: entry `(n, m) = f_hat(n + m)`.
pub fn hankel_section(f: &PowerSeries, n: usize) -> SectionMatrix {
    let c = f.coeffs(2 * n);
    SectionMatrix::new(DMatrix::from_fn(n, n, |i, j| c[i + j]), n, n, Structure::Hankel).expect("square section")
}

/// `[1/(n+m+1)]`.
pub fn hilbert_matrix(n: usize) -> SectionMatrix {
    hankel_section(&catalog::hilbert(), n)
}

/// Leading `n x n` block of `H_K * T_K(c)` where `H_K` is the Hankel section of
/// `f` and `T_K(c)` the lower-triangular Toeplitz section with first column
/// `c`, both at order `k`.
///
/// Entry `(i, j)` is `sum_{l < k - j} f_hat(i + j + l) c_l`. Columns are
/// produced from `j = n - 1` down to 0 so the running sums only ever gain
/// terms.
pub fn hankel_times_toeplitz(f_coeffs: &[C64], c: &[C64], n: usize, k: usize) -> DMatrix<C64> {
    assert!(k >= n, "headroom below truncation");
    assert!(f_coeffs.len() + 1 >= n + k, "need f coefficients up to n + k - 2");
    let zero = C64::new(0.0, 0.0);
    let c_at = |l: usize| c.get(l).copied().unwrap_or(zero);
    let clen = c.len().min(k);
    let span = 2 * n - 1;
    // Running sums g[s] = sum_{l < limit} f_hat(s + l) c_l for s in [0, 2n-1).
    let base = (k - n + 1).min(clen);
    let mut g = vec![zero; span];
    for (s, gs) in g.iter_mut().enumerate() {
        let fs = &f_coeffs[s..s + base];
        let mut acc = zero;
        for (a, b) in fs.iter().zip(&c[..base]) {
            acc += a * b;
        }
        *gs = acc;
    }
    let mut out = DMatrix::<C64>::zeros(n, n);
    for j in (0..n).rev() {
        let limit = k - j;
        if j + 1 < n {
            // bring in the term l = limit - 1 = k - j - 1
            let l = limit - 1;
            let cl = c_at(l);
            if l < clen && cl != zero {
                // every sum still needed by this or a later column
                for (s, gs) in g.iter_mut().enumerate().take(j + n) {
                    *gs += f_coeffs[s + l] * cl;
                }
            }
        }
        for i in 0..n {
            out[(i, j)] = g[i + j];
        }
    }
    out
}
