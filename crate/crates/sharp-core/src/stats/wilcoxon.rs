//! Two-sided Wilcoxon signed-rank test for paired samples.

use alloc::vec;
use alloc::vec::Vec;

use super::rank::midranks;
use super::special::normal_sf_two_sided;
use super::StatsError;
use crate::fmath;

/// Largest effective n for which the exact null distribution is enumerated.
const EXACT_MAX_N: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct WilcoxonResult {
    /// Pairs remaining after zero differences are discarded.
    pub n_effective: usize,
    /// min(W+, W-), the conventional reported statistic.
    pub statistic: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    /// Whether the p-value came from exact enumeration.
    pub exact: bool,
    /// True when every difference is zero; p = 1 by convention.
    pub degenerate: bool,
}

/// Signed-rank test on paired samples. Zero differences are discarded;
/// tied absolute differences share midranks. Exact sign enumeration for
/// effective n <= 20, else a tie-corrected normal approximation with
/// continuity correction.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<WilcoxonResult, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if let Some(&bad) = x.iter().chain(y).find(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteValue { value: bad });
    }

    let diffs: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Ok(WilcoxonResult {
            n_effective: 0,
            statistic: 0.0,
            w_plus: 0.0,
            w_minus: 0.0,
            p_value: 1.0,
            exact: true,
            degenerate: true,
        });
    }

    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| fmath::abs(*d)).collect();
    let ranks = midranks(&abs);
    // fold from +0.0: an empty `Sum` would yield -0.0 and leak its sign
    // into the reported statistic
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .fold(0.0, |acc, (_, r)| acc + r);
    let total = n as f64 * (n as f64 + 1.0) / 2.0;
    let w_minus = total - w_plus;
    let statistic = w_plus.min(w_minus);

    let (p_value, exact) = if n <= EXACT_MAX_N {
        (exact_p(&ranks, w_plus), true)
    } else {
        (approx_p(&abs, w_plus, n), false)
    };
    Ok(WilcoxonResult {
        n_effective: n,
        statistic,
        w_plus,
        w_minus,
        p_value,
        exact,
        degenerate: false,
    })
}

/// Exact two-sided p by subset-sum counting over doubled midranks
/// (doubling makes every rank integral).
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r + 0.5) as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    let mut counts = vec![0u64; max_sum + 1];
    counts[0] = 1;
    for &r in &doubled {
        for s in (r..=max_sum).rev() {
            counts[s] += counts[s - r];
        }
    }
    let total = (1u64 << ranks.len()) as f64;
    let w2 = (2.0 * w_plus + 0.5) as usize;
    let below: u64 = counts[..=w2].iter().sum();
    let above: u64 = counts[w2..].iter().sum();
    let tail = (below.min(above) as f64) / total;
    (2.0 * tail).min(1.0)
}

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction toward the mean.
fn approx_p(abs: &[f64], w_plus: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0;
    // subtract (t^3 - t)/48 per group of tied absolute differences
    let mut sorted = abs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sorted[end] == sorted[start] {
            end += 1;
        }
        let t = (end - start) as f64;
        var -= (t * t * t - t) / 48.0;
        start = end;
    }
    let dev = w_plus - mean;
    let correction = if dev == 0.0 { 0.0 } else { 0.5 * dev.signum() };
    let z = (dev - correction) / fmath::sqrt(var);
    normal_sf_two_sided(z)
}
