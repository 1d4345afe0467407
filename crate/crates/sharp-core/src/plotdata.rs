//! Distribution summaries for external plotting.
//!
//! Per (model, metric) this emits a quantile summary and a fixed-width
//! histogram; rendering (violins, boxes, whisker policy) is left to the
//! plotting tool. Quantiles reuse the tail-risk order-statistic convention,
//! so the 97.5% quantile of cumulative log risk equals VaR at that level.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ensemble::HarmField;
use crate::fmath;
use crate::risk::{var, RiskError, RiskField};

/// Metrics summarized per model, in emission order.
pub const PLOT_METRICS: [&str; 7] = [
    "joint_safety",
    "any_harm",
    "cumulative_log_risk",
    "bias",
    "fairness",
    "ethics",
    "epistemic",
];

const BINS: usize = 64;

/// Order-statistic quantile summary; fields are non-decreasing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quantiles {
    pub min: f64,
    pub p2_5: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub p97_5: f64,
    pub max: f64,
}

/// Fixed-width histogram over the observed range.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    /// 65 ascending bin edges; all equal when the metric is constant.
    pub edges: Vec<f64>,
    /// 64 bin counts summing to the sample size.
    pub counts: Vec<u64>,
}

/// Distribution summary of one metric for one model.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotRecord {
    pub model_id: String,
    pub metric: &'static str,
    pub n: usize,
    pub quantiles: Quantiles,
    pub histogram: Histogram,
}

fn quantiles(values: &[f64]) -> Result<Quantiles, RiskError> {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(Quantiles {
        min,
        p2_5: var(values, 0.025)?,
        p25: var(values, 0.25)?,
        p50: var(values, 0.50)?,
        p75: var(values, 0.75)?,
        p97_5: var(values, 0.975)?,
        max,
    })
}

fn histogram(values: &[f64]) -> Histogram {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = (max - min) / BINS as f64;
    let edges = (0..=BINS).map(|i| min + i as f64 * width).collect();
    let mut counts = vec![0u64; BINS];
    for &x in values {
        let idx = if width > 0.0 {
            (fmath::floor((x - min) / width) as usize).min(BINS - 1)
        } else {
            0
        };
        counts[idx] += 1;
    }
    Histogram { edges, counts }
}

/// Summarizes the seven per-prompt metrics for every model: residual
/// (joint) safety, any-harm probability, cumulative log risk, and the
/// four ensembled sub-indices.
pub fn plot_data(harm: &HarmField, risk: &RiskField) -> Result<Vec<PlotRecord>, RiskError> {
    if harm.models() != risk.models() || harm.prompts() != risk.prompts() {
        return Err(RiskError::GridMismatch);
    }
    let mut records = Vec::with_capacity(harm.k() * PLOT_METRICS.len());
    for m in 0..harm.k() {
        let mut columns: [Vec<f64>; 7] = Default::default();
        for q in 0..harm.n() {
            if let (Some(hv), Some(cell)) = (harm.vector(m, q), risk.cell(m, q)) {
                columns[0].push(cell.residual_safety);
                columns[1].push(cell.any_harm);
                columns[2].push(cell.cumulative);
                for (d, x) in hv.as_array().into_iter().enumerate() {
                    columns[3 + d].push(x);
                }
            }
        }
        if columns[0].is_empty() {
            return Err(RiskError::EmptyModelSlice {
                model_id: harm.models()[m].clone(),
            });
        }
        for (metric, values) in PLOT_METRICS.into_iter().zip(&columns) {
            records.push(PlotRecord {
                model_id: harm.models()[m].clone(),
                metric,
                n: values.len(),
                quantiles: quantiles(values)?,
                histogram: histogram(values),
            });
        }
    }
    Ok(records)
}
