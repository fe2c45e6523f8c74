use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::SCHEMA;
use crate::text::{format_complex, parse_complex};

type C64 = Complex64;

/// Structural promise attached to a section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    LowerToeplitz,
    UpperToeplitz,
    Hankel,
    Block2x2,
    General,
}

/// A dense complex finite section.
///
/// `truncation` is the target order N, `headroom` the order K >= N at which
/// products were formed before compression, and `tail_bound` an estimate of
/// the Frobenius norm of what the compression discarded (0 when exact).
#[derive(Debug, Clone, PartialEq)]
pub struct SectionMatrix {
    entries: DMatrix<C64>,
    truncation: usize,
    headroom: usize,
    structure: Structure,
    tail_bound: f64,
    // Per column, the half-open row range holding every nonzero entry.
    support: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    schema: String,
    rows: usize,
    cols: usize,
    truncation: usize,
    headroom: usize,
    structure: Structure,
    tail_bound: f64,
}

impl SectionMatrix {
    pub fn new(entries: DMatrix<C64>, truncation: usize, headroom: usize, structure: Structure) -> Result<Self> {
        if headroom < truncation {
            return Err(Error::HeadroomInsufficient { truncation, headroom });
        }
        let support = column_support(&entries);
        Ok(SectionMatrix {
            entries,
            truncation,
            headroom,
            structure,
            tail_bound: 0.0,
            support,
        })
    }

    /// A general matrix with `truncation = headroom = rows`.
    pub fn general(entries: DMatrix<C64>) -> Self {
        let n = entries.nrows();
        Self::new(entries, n, n, Structure::General).expect("headroom equals truncation")
    }

    pub fn identity(n: usize) -> Self {
        Self::general(DMatrix::identity(n, n))
    }

    pub fn with_tail_bound(mut self, tail: f64) -> Self {
        self.tail_bound = tail;
        self
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn headroom(&self) -> usize {
        self.headroom
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &SectionMatrix) -> f64 {
        assert_eq!(self.entries.shape(), other.entries.shape(), "shape mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|c| c.im == 0.0)
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        let rows = self.rows();
        debug_assert_eq!(x.len(), self.cols());
        debug_assert_eq!(y.len(), rows);
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        let data = self.entries.as_slice();
        for (j, (&xj, &(lo, hi))) in x.iter().zip(&self.support).enumerate() {
            if xj == C64::new(0.0, 0.0) || lo >= hi {
                continue;
            }
            let col = &data[j * rows + lo..j * rows + hi];
            for (yi, &a) in y[lo..hi].iter_mut().zip(col) {
                *yi += a * xj;
            }
        }
    }

    /// `x = A^H y`.
    pub fn adjoint_matvec(&self, y: &[C64], x: &mut [C64]) {
        let rows = self.rows();
        let data = self.entries.as_slice();
        for (j, (xj, &(lo, hi))) in x.iter_mut().zip(&self.support).enumerate() {
            let col = &data[j * rows + lo..j * rows + hi];
            let mut re = 0.0;
            let mut im = 0.0;
            for (a, v) in col.iter().zip(&y[lo..hi]) {
                // conj(a) * v
                re += a.re * v.re + a.im * v.im;
                im += a.re * v.im - a.im * v.re;
            }
            *xj = C64::new(re, im);
        }
    }

    /// Header line (JSON) followed by one CSV row per matrix row, entries as `re+imj`.
    pub fn to_text(&self) -> String {
        let header = Header {
            schema: SCHEMA.to_string(),
            rows: self.rows(),
            cols: self.cols(),
            truncation: self.truncation,
            headroom: self.headroom,
            structure: self.structure,
            tail_bound: self.tail_bound,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| format_complex(self.entries[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`SectionMatrix::to_text`], checking the
    /// shape and the structural invariant named in the header.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let header: Header = serde_json::from_str(head).map_err(|e| Error::Parse(format!("bad header: {e}")))?;
        if header.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema `{}`", header.schema)));
        }
        let (rows, cols) = (header.rows, header.cols);
        if rows.checked_mul(cols).is_none_or(|n| n > text.len()) {
            return Err(Error::Parse("declared shape does not fit the document".into()));
        }
        let mut m = DMatrix::<C64>::zeros(rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {i}")))?;
            let mut count = 0;
            for (j, field) in line.split(',').enumerate() {
                if j >= cols {
                    return Err(Error::Parse(format!("row {i} has more than {cols} entries")));
                }
                m[(i, j)] = parse_complex(field)?;
                count += 1;
            }
            if count != cols {
                return Err(Error::Parse(format!("row {i} has {count} entries, expected {cols}")));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing rows after the declared shape".into()));
        }
        if !(header.tail_bound >= 0.0) {
            return Err(Error::Parse("tail bound must be nonnegative".into()));
        }
        check_structure(&m, header.structure)?;
        Ok(Self::new(m, header.truncation, header.headroom, header.structure)
            .map_err(|e| Error::Parse(e.to_string()))?
            .with_tail_bound(header.tail_bound))
    }
}

fn column_support(m: &DMatrix<C64>) -> Vec<(usize, usize)> {
    let zero = C64::new(0.0, 0.0);
    m.column_iter()
        .map(|col| {
            let lo = col.iter().position(|&v| v != zero);
            match lo {
                None => (0, 0),
                Some(lo) => {
                    let hi = col.len() - col.iter().rev().position(|&v| v != zero).unwrap();
                    (lo, hi)
                }
            }
        })
        .collect()
}

fn check_structure(m: &DMatrix<C64>, s: Structure) -> Result<()> {
    let (r, c) = m.shape();
    let bad = |what: &str| Err(Error::Parse(format!("entries violate the {what} structure")));
    match s {
        Structure::LowerToeplitz | Structure::UpperToeplitz => {
            if r != c {
                return bad("square Toeplitz");
            }
            for i in 0..r {
                for j in 0..c {
                    let zero_side = if s == Structure::LowerToeplitz { i < j } else { i > j };
                    if zero_side && m[(i, j)] != C64::new(0.0, 0.0) {
                        return bad("triangular");
                    }
                    if i > 0 && j > 0 && m[(i, j)] != m[(i - 1, j - 1)] {
                        return bad("Toeplitz");
                    }
                }
            }
        }
        Structure::Hankel => {
            for i in 1..r {
                for j in 0..c.saturating_sub(1) {
                    if m[(i, j)] != m[(i - 1, j + 1)] {
                        return bad("Hankel");
                    }
                }
            }
        }
        Structure::Block2x2 => {
            if r != c || r % 2 != 0 {
                return bad("2x2 block");
            }
            let n = r / 2;
            for i in n..r {
                for j in 0..n {
                    if m[(i, j)] != C64::new(0.0, 0.0) {
                        return bad("upper block-triangular");
                    }
                }
            }
        }
        Structure::General => {}
    }
    Ok(())
}

/// Dense product `a * b`, accumulated column by column.
pub fn matmul(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let (m, n) = (a.nrows(), b.ncols());
    let mut out = DMatrix::<C64>::zeros(m, n);
    let ad = a.as_slice();
    let od = out.as_mut_slice();
    for j in 0..n {
        let oc = &mut od[j * m..(j + 1) * m];
        for k in 0..a.ncols() {
            let bkj = b[(k, j)];
            if bkj == C64::new(0.0, 0.0) {
                continue;
            }
            for (o, &v) in oc.iter_mut().zip(&ad[k * m..(k + 1) * m]) {
                *o += v * bkj;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SectionMatrix {
        let m = DMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64 * 0.25, i as f64 - j as f64));
        SectionMatrix::general(m)
    }

    #[test]
    fn text_roundtrip() {
        let a = sample().with_tail_bound(1e-9);
        let back = SectionMatrix::from_text(&a.to_text()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn rejects_bad_documents() {
        let good = sample().to_text();
        assert!(SectionMatrix::from_text("").is_err());
        let truncated: String = good.lines().take(2).collect::<Vec<_>>().join("\n");
        assert!(SectionMatrix::from_text(&truncated).is_err());
        let lying = good.replace("\"general\"", "\"hankel\"");
        assert!(SectionMatrix::from_text(&lying).is_err());
    }

    #[test]
    fn matvec_and_adjoint() {
        let a = sample();
        let x = [C64::new(1.0, 0.5), C64::new(-1.0, 0.0), C64::new(0.0, 2.0)];
        let mut y = [C64::new(0.0, 0.0); 3];
        a.matvec(&x, &mut y);
        let dense = a.entries() * nalgebra::DVector::from_column_slice(&x);
        for i in 0..3 {
            assert!((y[i] - dense[i]).norm() < 1e-14);
        }
        let mut z = [C64::new(0.0, 0.0); 3];
        a.adjoint_matvec(&x, &mut z);
        let dense = a.entries().adjoint() * nalgebra::DVector::from_column_slice(&x);
        for i in 0..3 {
            assert!((z[i] - dense[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn matmul_matches_nalgebra() {
        let a = sample();
        let p = matmul(a.entries(), a.entries());
        let q = a.entries() * a.entries();
        assert!((p - q).iter().all(|v| v.norm() < 1e-13));
    }
}
