use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::sections::SectionMatrix;

type C64 = Complex64;

/// Anything that can be applied to a vector and to its adjoint.
pub trait LinearOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[C64], y: &mut [C64]);
    /// `x = A^H y`
    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]);
}

impl LinearOperator for SectionMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }

    fn ncols(&self) -> usize {
        self.cols()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.matvec(x, y)
    }

    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]) {
        self.adjoint_matvec(y, x)
    }
}

impl LinearOperator for DMatrix<C64> {
    fn nrows(&self) -> usize {
        self.shape().0
    }

    fn ncols(&self) -> usize {
        self.shape().1
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        let m = self.shape().0;
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for (col, &xj) in self.as_slice().chunks_exact(m.max(1)).zip(x) {
            if xj == C64::new(0.0, 0.0) {
                continue;
            }
            for (yi, &a) in y.iter_mut().zip(col) {
                *yi += a * xj;
            }
        }
    }

    fn apply_adjoint(&self, y: &[C64], x: &mut [C64]) {
        let m = self.shape().0;
        for (col, xj) in self.as_slice().chunks_exact(m.max(1)).zip(x.iter_mut()) {
            *xj = col.iter().zip(y).map(|(a, v)| a.conj() * v).sum();
        }
    }
}
