use serde::{Deserialize, Serialize};

use super::norm::spectral_norm;
use crate::error::{Error, Result};
use crate::report::SCHEMA;
use crate::sections::{power_closed_form, FoguelHankelSpec};

/// Norms of `Gamma^n` over a list of powers for one operator.
///
/// `dominant[i]` is the norm of the corner block `n J H_f M^{n-1}` alone and
/// `tail_bounds[i]` the Frobenius bound on what the compression discarded,
/// which also bounds the error in `values[i].1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerNormSequence {
    pub f: String,
    pub phi: String,
    pub truncation: usize,
    pub values: Vec<(usize, f64)>,
    pub dominant: Vec<f64>,
    pub tail_bounds: Vec<f64>,
    pub headrooms: Vec<usize>,
}

impl PowerNormSequence {
    /// `max_{m <= n} ||Gamma^m||` over the sampled powers, aligned with `values`.
    pub fn running_sup(&self) -> Vec<f64> {
        let mut best = 0.0f64;
        self.values
            .iter()
            .map(|&(_, v)| {
                best = best.max(v);
                best
            })
            .collect()
    }

    /// `(max - min) / max` of the values whose power lies in `[n_max / 10, n_max]`.
    pub fn last_decade_range(&self) -> f64 {
        decade_range(&self.values)
    }

    /// Same range for the running supremum.
    pub fn last_decade_sup_range(&self) -> f64 {
        let sup: Vec<(usize, f64)> = self.values.iter().map(|p| p.0).zip(self.running_sup()).collect();
        decade_range(&sup)
    }

    /// Ratio of the value at power `b` to the value at power `a`, when both were sampled.
    pub fn ratio(&self, a: usize, b: usize) -> Option<f64> {
        let at = |n: usize| self.values.iter().find(|p| p.0 == n).map(|p| p.1);
        Some(at(b)? / at(a)?)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1].1 > w[0].1)
    }

    pub fn to_json(&self) -> String {
        let mut doc = serde_json::to_value(self).expect("sequence serializes");
        doc.as_object_mut()
            .expect("object")
            .insert("schema".into(), SCHEMA.into());
        serde_json::to_string_pretty(&doc).expect("sequence serializes")
    }

    /// `n,norm,dominant,tail_bound,headroom`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,norm,dominant,tail_bound,headroom\n");
        for (i, &(n, v)) in self.values.iter().enumerate() {
            out.push_str(&format!(
                "{n},{v},{},{},{}\n",
                self.dominant[i], self.tail_bounds[i], self.headrooms[i]
            ));
        }
        out
    }
}

fn decade_range(values: &[(usize, f64)]) -> f64 {
    let Some(&(n_max, _)) = values.last() else {
        return 0.0;
    };
    let window: Vec<f64> = values.iter().filter(|p| p.0 * 10 >= n_max).map(|p| p.1).collect();
    let hi = window.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = window.iter().cloned().fold(f64::INFINITY, f64::min);
    if hi > 0.0 {
        (hi - lo) / hi
    } else {
        0.0
    }
}

/// `||Gamma^n||` for each `n` in `powers` (strictly increasing, all >= 1),
/// from the closed-form sections at the requested truncation.
pub fn power_norm_sequence(spec: &FoguelHankelSpec, powers: &[usize], tol: f64) -> Result<PowerNormSequence> {
    if powers.is_empty() {
        return Err(Error::InvalidArgument("power list is empty".into()));
    }
    if powers[0] == 0 || powers.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "powers must be positive and strictly increasing".into(),
        ));
    }
    let n = spec.truncation;
    let mut seq = PowerNormSequence {
        f: spec.f.name().to_string(),
        phi: spec.phi.name().to_string(),
        truncation: n,
        values: Vec::with_capacity(powers.len()),
        dominant: Vec::with_capacity(powers.len()),
        tail_bounds: Vec::with_capacity(powers.len()),
        headrooms: Vec::with_capacity(powers.len()),
    };
    for &p in powers {
        let g = power_closed_form(spec, p)?;
        let corner = g.entries().view((0, n), (n, n)).clone_owned();
        seq.dominant.push(spectral_norm(&corner, tol)?);
        seq.values.push((p, spectral_norm(&g, tol)?));
        seq.tail_bounds.push(g.tail_bound());
        seq.headrooms.push(g.headroom());
    }
    Ok(seq)
}
