//! Largest singular value by Lanczos iteration on `A^H A`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operator::LinearOperator;
use crate::error::{Error, Result};

type C64 = Complex64;

/// Cap on applications of `A^H A` before giving up.
pub const MAX_ITERATIONS: usize = 100_000;

/// Krylov basis size before an explicit restart from the current Ritz vector.
const MAX_BASIS: usize = 256;

/// Seed for the fresh start vectors drawn after an invariant subspace is hit.
const BREAKDOWN_SEED: u64 = 0x005e_ed1a_2c05;

/// `||A||_2` to relative accuracy `tol`.
///
/// Lanczos with full reorthogonalization on `A^H A`, started from the
/// normalized all-ones vector. A Ritz value is accepted once
/// `min(r, r^2 / gap) <= tol * theta` where `r` is its residual and `gap`
/// the distance to the next Ritz value. If the start vector spans an
/// invariant subspace early, iteration continues on its orthogonal
/// complement from a seeded pseudo-random vector.
pub fn spectral_norm<A: LinearOperator + ?Sized>(a: &A, tol: f64) -> Result<f64> {
    let (m, n) = (a.nrows(), a.ncols());
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("spectral norm of an empty matrix".into()));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} outside (0, 1)")));
    }
    Lanczos::new(a, tol).run().map(f64::sqrt)
}

struct Lanczos<'a, A: ?Sized> {
    a: &'a A,
    tol: f64,
    scratch: Vec<C64>,
    iterations: usize,
    rng: ChaCha8Rng,
}

impl<'a, A: LinearOperator + ?Sized> Lanczos<'a, A> {
    fn new(a: &'a A, tol: f64) -> Self {
        Lanczos {
            a,
            tol,
            scratch: vec![C64::new(0.0, 0.0); a.nrows()],
            iterations: 0,
            rng: ChaCha8Rng::seed_from_u64(BREAKDOWN_SEED),
        }
    }

    fn gram(&mut self, x: &[C64], out: &mut [C64]) {
        self.a.apply(x, &mut self.scratch);
        self.a.apply_adjoint(&self.scratch, out);
    }

    /// Largest eigenvalue of `A^H A`.
    fn run(mut self) -> Result<f64> {
        let n = self.a.ncols();
        let mut start = vec![C64::new(1.0 / (n as f64).sqrt(), 0.0); n];
        let mut best = 0.0f64;
        let mut last_change = f64::INFINITY;
        loop {
            // One restart cycle; the basis may hold several Krylov blocks
            // separated by breakdowns.
            let mut q: Vec<Vec<C64>> = vec![start];
            let mut alpha: Vec<f64> = Vec::new();
            let mut beta: Vec<f64> = Vec::new();
            let mut block = 0;
            let mut scale = 0.0f64;
            let mut w = vec![C64::new(0.0, 0.0); n];
            loop {
                if self.iterations >= MAX_ITERATIONS {
                    return Err(Error::NoConvergence {
                        iterations: self.iterations,
                        last_change,
                    });
                }
                self.iterations += 1;
                let k = q.len() - 1;
                self.gram(&q[k], &mut w);
                if k > block {
                    axpy(&mut w, -beta[k - 1], &q[k - 1]);
                }
                let ak = dot(&q[k], &w).re;
                axpy(&mut w, -ak, &q[k]);
                for _ in 0..2 {
                    for qi in &q {
                        let c = dot(qi, &w);
                        for (wv, qv) in w.iter_mut().zip(qi) {
                            *wv -= c * qv;
                        }
                    }
                }
                let bk = norm(&w);
                alpha.push(ak);
                scale = scale.max(ak.abs()).max(bk);

                let (da, db) = (&alpha[block..], &beta[block..]);
                let theta = tridiagonal_eigenvalue(da, db, 0);
                best = best.max(theta);
                if q.len() == n {
                    return Ok(best);
                }
                let s = ritz_vector(da, db, theta);
                let resid = bk * s.last().copied().unwrap_or(0.0).abs();
                let err = if da.len() > 1 {
                    let gap = theta - tridiagonal_eigenvalue(da, db, 1);
                    if gap > 0.0 {
                        resid.min(resid * resid / gap)
                    } else {
                        resid
                    }
                } else {
                    resid
                };
                last_change = if theta > 0.0 { err / theta } else { f64::INFINITY };

                if bk <= 1e-13 * scale || bk == 0.0 {
                    // Invariant subspace: continue on its complement.
                    let mut fresh: Vec<C64> = (0..n)
                        .map(|_| C64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0)))
                        .collect();
                    for _ in 0..2 {
                        for qi in &q {
                            let c = dot(qi, &fresh);
                            axpy_c(&mut fresh, -c, qi);
                        }
                    }
                    let nf = norm(&fresh);
                    if nf == 0.0 {
                        return Ok(best);
                    }
                    fresh.iter_mut().for_each(|v| *v /= nf);
                    beta.push(0.0);
                    q.push(fresh);
                    block = q.len() - 1;
                    continue;
                }
                if err <= self.tol * theta {
                    return Ok(best);
                }
                if q.len() - block >= MAX_BASIS {
                    let mut x = vec![C64::new(0.0, 0.0); n];
                    for (sv, qv) in s.iter().zip(&q[block..]) {
                        axpy(&mut x, *sv, qv);
                    }
                    let nx = norm(&x);
                    x.iter_mut().for_each(|v| *v /= nx);
                    start = x;
                    break;
                }
                beta.push(bk);
                q.push(w.iter().map(|v| v / bk).collect());
            }
        }
    }
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    C64::new(re, im)
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [C64], s: f64, x: &[C64]) {
    for (yv, xv) in y.iter_mut().zip(x) {
        *yv += xv * s;
    }
}

fn axpy_c(y: &mut [C64], s: C64, x: &[C64]) {
    for (yv, xv) in y.iter_mut().zip(x) {
        *yv += xv * s;
    }
}

/// Number of eigenvalues of the symmetric tridiagonal `(a, b)` that are `>= x`.
fn count_at_least(a: &[f64], b: &[f64], x: f64) -> usize {
    let mut below = 0;
    let mut d = 1.0;
    for i in 0..a.len() {
        let off = if i > 0 { b[i - 1] * b[i - 1] / d } else { 0.0 };
        d = a[i] - x - off;
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            below += 1;
        }
    }
    a.len() - below
}

/// The `j`-th largest eigenvalue (from 0) by Sturm bisection.
pub(crate) fn tridiagonal_eigenvalue(a: &[f64], b: &[f64], j: usize) -> f64 {
    assert!(j < a.len());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..a.len() {
        let r = if i > 0 { b[i - 1].abs() } else { 0.0 } + if i + 1 < a.len() { b[i].abs() } else { 0.0 };
        lo = lo.min(a[i] - r);
        hi = hi.max(a[i] + r);
    }
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    lo -= pad;
    hi += pad;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_at_least(a, b, mid) > j {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Unit eigenvector for `theta` by two steps of inverse iteration.
fn ritz_vector(a: &[f64], b: &[f64], theta: f64) -> Vec<f64> {
    let m = a.len();
    if m == 1 {
        return vec![1.0];
    }
    let scale = a
        .iter()
        .chain(b)
        .fold(0.0f64, |s, v| s.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let shift = theta + 1e-10 * scale;
    let mut x = vec![1.0; m];
    for _ in 0..2 {
        solve_tridiagonal(a, b, shift, &mut x, scale);
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(nx.is_finite() && nx > 0.0) {
            return vec![0.0; m];
        }
        x.iter_mut().for_each(|v| *v /= nx);
    }
    x
}

/// Solves `(T - shift) y = x` in place by Gaussian elimination with partial
/// pivoting; exact zero pivots are nudged to `eps * scale`.
fn solve_tridiagonal(a: &[f64], b: &[f64], shift: f64, x: &mut [f64], scale: f64) {
    let n = a.len();
    let tiny = f64::EPSILON * scale;
    let mut d: Vec<f64> = a.iter().map(|v| v - shift).collect();
    let mut dl: Vec<f64> = b.to_vec();
    let mut du: Vec<f64> = b.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            x[i + 1] -= f * x[i];
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            let t = d[i + 1];
            d[i + 1] = du[i] - f * t;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            du[i] = t;
            let t = x[i];
            x[i] = x[i + 1];
            x[i + 1] = t - f * x[i + 1];
        }
        dl[i] = 0.0;
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    x[n - 1] /= d[n - 1];
    if n > 1 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
}
