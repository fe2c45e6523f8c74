//! Pure decision rules applied to recorded tables.
//!
//! Every threshold used to call a sequence bounded or growing lives here, so a
//! verdict can be recomputed from the emitted CSV alone.

use serde::{Deserialize, Serialize};

/// Largest log-log slope over the last decade still called bounded.
pub const BOUNDED_SLOPE: f64 = 0.1;

/// Largest last-decade range `(max - min)/max` of the running supremum still called bounded.
pub const BOUNDED_RANGE: f64 = 0.25;

/// `||Gamma^100|| / ||Gamma^10||` above which a strictly increasing sequence is called growing.
///
/// For the Hilbert symbol with `phi(z) = z` the ratio is 6.16, 6.87, 7.44 at
/// N = 512, 1024, 2048 and creeps up logarithmically; this is 80% of the
/// N = 2048 value.
pub const GROWTH_RATIO: f64 = 5.95;

/// Largest relative spread of section Kreiss estimates still called convergent.
pub const KREISS_SPREAD: f64 = 0.10;

/// Factor by which section Kreiss estimates must grow for the condition to be called failing.
pub const KREISS_GROWTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Bounded,
    Growing,
    Inconclusive,
}

impl Growth {
    pub fn label(&self) -> &'static str {
        match self {
            Growth::Bounded => "bounded",
            Growth::Growing => "growing",
            Growth::Inconclusive => "inconclusive",
        }
    }
}

/// Least-squares slope of `ln v` against `ln n` over `n in [n_max/10, n_max]`.
pub fn loglog_slope(values: &[(usize, f64)]) -> f64 {
    let window = last_decade(values);
    if window.len() < 2 {
        return 0.0;
    }
    let pts: Vec<(f64, f64)> = window
        .iter()
        .map(|&(n, v)| ((n as f64).ln(), v.max(f64::MIN_POSITIVE).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn last_decade(values: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let n_max = values.last().map(|p| p.0).unwrap_or(0);
    values.iter().copied().filter(|p| p.0 * 10 >= n_max).collect()
}

fn range(values: &[f64]) -> f64 {
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if hi > 0.0 {
        (hi - lo) / hi
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerVerdict {
    pub slope: f64,
    /// Last-decade range of the running supremum `max_{m <= n} ||Gamma^m||`.
    pub sup_range: f64,
    /// Last-decade range of the raw values.
    pub raw_range: f64,
    /// `value(n_max) / value(first sampled n >= n_max/10)`.
    pub decade_ratio: f64,
    pub strictly_increasing: bool,
    pub growth: Growth,
}

/// Growing: strictly increasing over the last decade with `decade_ratio >= GROWTH_RATIO`.
/// Bounded: `slope <= BOUNDED_SLOPE` and `sup_range <= BOUNDED_RANGE`.
pub fn power_verdict(values: &[(usize, f64)]) -> PowerVerdict {
    let window = last_decade(values);
    let mut best = 0.0f64;
    let sup: Vec<(usize, f64)> = values
        .iter()
        .map(|&(n, v)| {
            best = best.max(v);
            (n, best)
        })
        .collect();
    let sup_window: Vec<f64> = last_decade(&sup).iter().map(|p| p.1).collect();
    let raw: Vec<f64> = window.iter().map(|p| p.1).collect();
    let decade_ratio = match (window.first(), window.last()) {
        (Some(a), Some(b)) if a.1 > 0.0 => b.1 / a.1,
        _ => 1.0,
    };
    let strictly_increasing = window.windows(2).all(|w| w[1].1 > w[0].1);
    let slope = loglog_slope(values);
    let sup_range = range(&sup_window);
    let growth = if strictly_increasing && decade_ratio >= GROWTH_RATIO {
        Growth::Growing
    } else if slope <= BOUNDED_SLOPE && sup_range <= BOUNDED_RANGE {
        Growth::Bounded
    } else {
        Growth::Inconclusive
    };
    PowerVerdict {
        slope,
        sup_range,
        raw_range: range(&raw),
        decade_ratio,
        strictly_increasing,
        growth,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KreissCall {
    Convergent,
    Fails,
    Inconclusive,
}

impl KreissCall {
    pub fn label(&self) -> &'static str {
        match self {
            KreissCall::Convergent => "kreiss-convergent",
            KreissCall::Fails => "kreiss-fails",
            KreissCall::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KreissVerdict {
    /// Estimate at the largest truncation over the estimate at the smallest.
    pub growth: f64,
    /// `(max - min)/max` over all truncations.
    pub spread: f64,
    pub call: KreissCall,
}

/// Fails when `growth >= KREISS_GROWTH`; convergent when `spread <= KREISS_SPREAD`.
pub fn kreiss_verdict(estimates: &[(usize, f64)]) -> KreissVerdict {
    let values: Vec<f64> = estimates.iter().map(|p| p.1).collect();
    let growth = match (values.first(), values.last()) {
        (Some(&a), Some(&b)) if a > 0.0 => b / a,
        _ => 1.0,
    };
    let spread = range(&values);
    let call = if growth >= KREISS_GROWTH {
        KreissCall::Fails
    } else if spread <= KREISS_SPREAD {
        KreissCall::Convergent
    } else {
        KreissCall::Inconclusive
    };
    KreissVerdict { growth, spread, call }
}
