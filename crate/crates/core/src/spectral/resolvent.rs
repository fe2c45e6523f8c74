use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::norm::spectral_norm;
use crate::error::{Error, Result};
use crate::report::SCHEMA;
use crate::sections::toeplitz::{lower_toeplitz_from, upper_toeplitz_from};
use crate::sections::{hankel_section, matmul, resolvent_section, FoguelHankelSpec, SectionMatrix};

type C64 = Complex64;

fn outside_disc(lambda: C64) -> Result<()> {
    if lambda.norm() > 1.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "|lambda| = {} must exceed 1",
            lambda.norm()
        )))
    }
}

/// `||(lambda - Gamma)^{-1}||` on the leading section, via `(lambda - Gamma)^{-1} = mu R_mu(Gamma)`
/// with `mu = 1 / lambda` and the closed-form resolvent section.
pub fn resolvent_norm(spec: &FoguelHankelSpec, lambda: C64, tol: f64) -> Result<f64> {
    outside_disc(lambda)?;
    let mu = lambda.inv();
    let r = resolvent_section(spec, mu)?;
    Ok(mu.norm() * spectral_norm(&r, tol)?)
}

/// The same quantity by brute force: the leading section of
/// `(lambda - Gamma_K)^{-1}` with `Gamma_K` the order-`headroom` section,
/// obtained by triangular solves on the diagonal blocks.
///
/// It shares nothing with the closed form beyond the symbol coefficients,
/// and agrees with it up to the truncation error at order `headroom`.
pub fn resolvent_norm_dense(spec: &FoguelHankelSpec, lambda: C64, headroom: usize, tol: f64) -> Result<f64> {
    outside_disc(lambda)?;
    let n = spec.truncation;
    if headroom < n {
        return Err(Error::HeadroomInsufficient {
            truncation: n,
            headroom,
        });
    }
    let k = headroom;
    let phi = spec.phi.series().coeffs(k);
    let shift = DMatrix::<C64>::identity(k, k) * lambda;
    let lower = shift.clone() - lower_toeplitz_from(&phi, k);
    // (lambda - M*) is upper triangular; its rows are columns of the inverse transpose.
    let upper_t = (shift - upper_toeplitz_from(&phi, k)).transpose();
    let rhs = DMatrix::<C64>::identity(k, n);
    let singular = || Error::SingularSolve {
        re: lambda.re,
        im: lambda.im,
    };
    let l = lower.solve_lower_triangular(&rhs).ok_or_else(singular)?;
    let u = upper_t.solve_lower_triangular(&rhs).ok_or_else(singular)?.transpose();
    let hl = matmul(hankel_section(&spec.f, k).entries(), &l);
    let corner = matmul(&u, &hl);
    let mut m = DMatrix::<C64>::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&u.view((0, 0), (n, n)));
    m.view_mut((0, n), (n, n)).copy_from(&corner);
    m.view_mut((n, n), (n, n)).copy_from(&l.view((0, 0), (n, n)));
    spectral_norm(&m, tol)
}

/// `||(lambda - A)^{-1}||` by LU inversion.
pub fn dense_resolvent_norm(a: &SectionMatrix, lambda: C64, tol: f64) -> Result<f64> {
    if a.rows() != a.cols() {
        return Err(Error::InvalidArgument("resolvent of a non-square matrix".into()));
    }
    let n = a.rows();
    let m = DMatrix::<C64>::identity(n, n) * lambda - a.entries();
    let inv = m
        .lu()
        .try_inverse()
        .filter(|inv| inv.iter().all(|v| v.is_finite()))
        .ok_or(Error::SingularSolve {
            re: lambda.re,
            im: lambda.im,
        })?;
    spectral_norm(&inv, tol)
}

/// Axis-aligned rectangle `[lo.re, hi.re] x [lo.im, hi.im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexBox {
    pub lo: C64,
    pub hi: C64,
}

/// Resolvent norms on a tensor grid; `values[i * re.len() + j]` belongs to `re[j] + i im[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudospectrumGrid {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub values: Vec<f64>,
    /// Nodes where the solve failed; their value is `+inf`.
    pub singular: Vec<C64>,
}

impl PseudospectrumGrid {
    pub fn value(&self, i_im: usize, j_re: usize) -> f64 {
        self.values[i_im * self.re.len() + j_re]
    }

    /// `re,im,value`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,value\n");
        for (i, &y) in self.im.iter().enumerate() {
            for (j, &x) in self.re.iter().enumerate() {
                out.push_str(&format!("{x},{y},{}\n", self.value(i, j)));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        // JSON has no infinity; singular nodes are written as null.
        let values: Vec<Option<f64>> = self.values.iter().map(|v| v.is_finite().then_some(*v)).collect();
        let doc = serde_json::json!({
            "schema": SCHEMA,
            "re": self.re,
            "im": self.im,
            "values": values,
            "singular": self.singular.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).expect("grid serializes")
    }
}

fn axis(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// `||(lambda - A)^{-1}||` at `resolution = (columns, rows)` nodes spanning `frame`,
/// endpoints included. Singular nodes are recorded and valued `+inf`.
pub fn pseudospectrum_grid(
    a: &SectionMatrix,
    frame: ComplexBox,
    resolution: (usize, usize),
    tol: f64,
) -> Result<PseudospectrumGrid> {
    let (nx, ny) = resolution;
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive".into()));
    }
    let re = axis(frame.lo.re, frame.hi.re, nx);
    let im = axis(frame.lo.im, frame.hi.im, ny);
    let mut values = Vec::with_capacity(nx * ny);
    let mut singular = Vec::new();
    for &y in &im {
        for &x in &re {
            let lambda = C64::new(x, y);
            match dense_resolvent_norm(a, lambda, tol) {
                Ok(v) => values.push(v),
                Err(Error::SingularSolve { .. }) => {
                    singular.push(lambda);
                    values.push(f64::INFINITY);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(PseudospectrumGrid {
        re,
        im,
        values,
        singular,
    })
}
