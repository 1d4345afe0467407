//! Two-way fixed-effects variance decomposition of the risk matrix.

use super::{RiskMatrix, StatsError};

/// Sum-of-squares decomposition with eta-squared effect sizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceDecomposition {
    pub ss_total: f64,
    /// Prompt-count-weighted squared deviations of model (column) means.
    pub ss_model: f64,
    /// Model-count-weighted squared deviations of prompt (row) means.
    pub ss_prompt: f64,
    pub ss_residual: f64,
    pub eta2_model: f64,
    pub eta2_prompt: f64,
    pub eta2_residual: f64,
    pub partial_eta2_model: f64,
    pub partial_eta2_prompt: f64,
    /// True when the matrix has no variance; all effect sizes are 0.
    pub degenerate: bool,
}

/// Splits total variation into model, prompt, and residual components.
pub fn variance_decomposition(matrix: &RiskMatrix) -> Result<VarianceDecomposition, StatsError> {
    let (n, k) = (matrix.n(), matrix.k());
    if n < 2 {
        return Err(StatsError::TooFewRows { n });
    }
    if k < 2 {
        return Err(StatsError::TooFewColumns { k });
    }
    let (nf, kf) = (n as f64, k as f64);

    let mut grand = 0.0;
    let mut col_means = alloc::vec![0.0; k];
    let mut row_means = alloc::vec![0.0; n];
    for (q, row_mean) in row_means.iter_mut().enumerate() {
        for (m, col_mean) in col_means.iter_mut().enumerate() {
            let v = matrix.value(q, m);
            grand += v;
            *col_mean += v;
            *row_mean += v;
        }
    }
    grand /= nf * kf;
    for c in col_means.iter_mut() {
        *c /= nf;
    }
    for r in row_means.iter_mut() {
        *r /= kf;
    }

    let mut ss_total = 0.0;
    for q in 0..n {
        for m in 0..k {
            let d = matrix.value(q, m) - grand;
            ss_total += d * d;
        }
    }
    let ss_model: f64 = col_means.iter().map(|c| nf * (c - grand) * (c - grand)).sum();
    let ss_prompt: f64 = row_means.iter().map(|r| kf * (r - grand) * (r - grand)).sum();
    let ss_residual = ss_total - ss_model - ss_prompt;

    if ss_total <= 0.0 {
        return Ok(VarianceDecomposition {
            ss_total,
            ss_model,
            ss_prompt,
            ss_residual,
            eta2_model: 0.0,
            eta2_prompt: 0.0,
            eta2_residual: 0.0,
            partial_eta2_model: 0.0,
            partial_eta2_prompt: 0.0,
            degenerate: true,
        });
    }
    Ok(VarianceDecomposition {
        ss_total,
        ss_model,
        ss_prompt,
        ss_residual,
        eta2_model: ss_model / ss_total,
        eta2_prompt: ss_prompt / ss_total,
        eta2_residual: ss_residual / ss_total,
        partial_eta2_model: ss_model / (ss_model + ss_residual),
        partial_eta2_prompt: ss_prompt / (ss_prompt + ss_residual),
        degenerate: false,
    })
}
