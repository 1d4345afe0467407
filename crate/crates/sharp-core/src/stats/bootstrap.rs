//! Paired (blocked) nonparametric bootstrap over the prompt axis.
//!
//! Replicate b draws its prompt indices from an independent ChaCha8
//! substream keyed by (seed, b), so replicates can run in any order or
//! in parallel and still produce bit-identical results. Within a
//! replicate every model sees the same resampled prompt multiset, which
//! cancels prompt-difficulty variation out of pairwise deltas.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{RiskMatrix, StatsError};
use crate::risk;

/// Default bootstrap replicate count.
pub const DEFAULT_BOOTSTRAP_REPLICATES: u32 = 10_000;

const CI_LO: f64 = 0.025;
const CI_HI: f64 = 0.975;

/// Difference of one statistic between two models, with its bootstrap CI.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseDelta {
    pub model_a: String,
    pub model_b: String,
    /// Point estimate of statistic(A) - statistic(B).
    pub delta: f64,
    pub lo: f64,
    pub hi: f64,
    /// True exactly when 0 lies outside [lo, hi].
    pub separable: bool,
}

/// Bootstrap distribution summary for one statistic across models.
#[derive(Clone, Debug, PartialEq)]
pub struct BootstrapResult {
    pub statistic: String,
    pub models: Vec<String>,
    pub point: Vec<f64>,
    /// Per-model 2.5% replicate quantiles.
    pub lo: Vec<f64>,
    /// Per-model 97.5% replicate quantiles.
    pub hi: Vec<f64>,
    pub replicates: u32,
    pub seed: u64,
    pub pairwise: Vec<PairwiseDelta>,
}

/// Prompt index draws for one replicate, from substream (seed, replicate).
///
/// Indices come from `next_u64() % n`; the modulo bias is immaterial for
/// any realistic n and keeps the substream contract trivial to restate.
pub fn replicate_indices(seed: u64, replicate: u32, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    (0..n).map(|_| (rng.next_u64() % n as u64) as usize).collect()
}

/// Applies the metric to every model's column resampled at `indices`.
pub fn replicate_metrics<F>(matrix: &RiskMatrix, metric: &F, indices: &[usize]) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut sample = Vec::with_capacity(indices.len());
    (0..matrix.k())
        .map(|m| {
            sample.clear();
            sample.extend(indices.iter().map(|&q| matrix.value(q, m)));
            metric(&sample)
        })
        .collect()
}

/// Quantile of replicate values by the ceil(q * B) order statistic,
/// the same convention the risk profiles use.
fn percentile(values: &[f64], q: f64) -> f64 {
    risk::var(values, q).expect("replicates are non-empty and finite")
}

/// Builds the result from per-replicate metric rows (row b = replicate b,
/// one value per model). Split out so a parallel driver can produce the
/// rows in any fashion and still get bit-identical output.
pub fn assemble_bootstrap(
    matrix: &RiskMatrix,
    statistic: &str,
    point: Vec<f64>,
    rows: Vec<Vec<f64>>,
    seed: u64,
) -> Result<BootstrapResult, StatsError> {
    let k = matrix.k();
    if rows.is_empty() {
        return Err(StatsError::ZeroReplicates);
    }
    if point.len() != k {
        return Err(StatsError::DimensionMismatch {
            expected: k,
            got: point.len(),
        });
    }
    for (m, &p) in point.iter().enumerate() {
        if !p.is_finite() {
            return Err(StatsError::NonFiniteMetric {
                model_id: matrix.models()[m].clone(),
            });
        }
    }
    for (b, row) in rows.iter().enumerate() {
        if row.len() != k {
            return Err(StatsError::DimensionMismatch {
                expected: k,
                got: row.len(),
            });
        }
        if let Some((m, _)) = row.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(StatsError::NonFiniteReplicate {
                replicate: b as u32,
                model_id: matrix.models()[m].clone(),
            });
        }
    }

    let column = |m: usize| -> Vec<f64> { rows.iter().map(|row| row[m]).collect() };
    let mut lo = Vec::with_capacity(k);
    let mut hi = Vec::with_capacity(k);
    for m in 0..k {
        let col = column(m);
        lo.push(percentile(&col, CI_LO));
        hi.push(percentile(&col, CI_HI));
    }

    let mut pairwise = Vec::with_capacity(k * (k - 1) / 2);
    let mut deltas = Vec::with_capacity(rows.len());
    for a in 0..k {
        for b in a + 1..k {
            deltas.clear();
            deltas.extend(rows.iter().map(|row| row[a] - row[b]));
            let d_lo = percentile(&deltas, CI_LO);
            let d_hi = percentile(&deltas, CI_HI);
            pairwise.push(PairwiseDelta {
                model_a: matrix.models()[a].clone(),
                model_b: matrix.models()[b].clone(),
                delta: point[a] - point[b],
                lo: d_lo,
                hi: d_hi,
                separable: d_lo > 0.0 || d_hi < 0.0,
            });
        }
    }

    Ok(BootstrapResult {
        statistic: String::from(statistic),
        models: matrix.models().to_vec(),
        point,
        lo,
        hi,
        replicates: rows.len() as u32,
        seed,
        pairwise,
    })
}

/// Serial paired bootstrap: B replicates of `metric` per model with
/// shared prompt resampling, percentile CIs, and all pairwise deltas.
pub fn paired_bootstrap<F>(
    matrix: &RiskMatrix,
    statistic: &str,
    metric: F,
    replicates: u32,
    seed: u64,
) -> Result<BootstrapResult, StatsError>
where
    F: Fn(&[f64]) -> f64,
{
    if matrix.n() == 0 || matrix.k() == 0 {
        return Err(StatsError::EmptySample);
    }
    if replicates == 0 {
        return Err(StatsError::ZeroReplicates);
    }
    let point: Vec<f64> = (0..matrix.k()).map(|m| metric(&matrix.column(m))).collect();
    let rows: Vec<Vec<f64>> = (0..replicates)
        .map(|b| replicate_metrics(matrix, &metric, &replicate_indices(seed, b, matrix.n())))
        .collect();
    assemble_bootstrap(matrix, statistic, point, rows, seed)
}
