//! Friedman rank test across models with Kendall's W effect size.

use alloc::vec::Vec;

use super::rank::midranks;
use super::special::chi2_sf;
use super::{RiskMatrix, StatsError};

/// Friedman omnibus test over a complete prompt-by-model matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FriedmanResult {
    /// Tie-corrected chi-square statistic.
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Kendall's coefficient of concordance, statistic / (n (k-1)).
    pub kendall_w: f64,
    pub n: usize,
    pub k: usize,
    /// Per-model rank sums over prompts.
    pub rank_sums: Vec<f64>,
    /// Per-model mean ranks.
    pub mean_ranks: Vec<f64>,
    /// True when every row is fully tied and the statistic collapses to 0.
    pub degenerate: bool,
}

/// Ranks models within each prompt (midranks for ties) and tests whether
/// the models' rank sums could be exchangeable.
pub fn friedman(matrix: &RiskMatrix) -> Result<FriedmanResult, StatsError> {
    let (n, k) = (matrix.n(), matrix.k());
    if n < 2 {
        return Err(StatsError::TooFewRows { n });
    }
    if k < 2 {
        return Err(StatsError::TooFewColumns { k });
    }

    let mut rank_sums = alloc::vec![0.0; k];
    let mut sum_sq = 0.0;
    for q in 0..n {
        let ranks = midranks(matrix.row(q));
        for (m, r) in ranks.iter().enumerate() {
            rank_sums[m] += r;
            sum_sq += r * r;
        }
    }

    let (nf, kf) = (n as f64, k as f64);
    let expected = nf * (kf + 1.0) / 2.0;
    let numerator: f64 = (kf - 1.0)
        * rank_sums
            .iter()
            .map(|r| (r - expected) * (r - expected))
            .sum::<f64>();
    // tie correction: sum of squared ranks minus its fully-tied value
    let denominator = sum_sq - nf * kf * (kf + 1.0) * (kf + 1.0) / 4.0;

    let degenerate = denominator <= 0.0;
    let statistic = if degenerate { 0.0 } else { numerator / denominator };
    let df = k - 1;
    Ok(FriedmanResult {
        statistic,
        df,
        p_value: if degenerate { 1.0 } else { chi2_sf(statistic, df) },
        kendall_w: statistic / (nf * (kf - 1.0)),
        n,
        k,
        mean_ranks: rank_sums.iter().map(|r| r / nf).collect(),
        rank_sums,
        degenerate,
    })
}
