//! Statistical validation battery.
//!
//! Paired bootstrap confidence intervals with pairwise separability,
//! Friedman omnibus test with Kendall's W, Wilcoxon signed-rank with Holm
//! correction, two-way fixed-effects variance decomposition, and the rank
//! correlation primitives shared by the robustness analyses.

mod anova;
mod bootstrap;
mod friedman;
mod holm;
mod rank;
pub(crate) mod special;
mod wilcoxon;

pub use anova::{variance_decomposition, VarianceDecomposition};
pub use bootstrap::{
    assemble_bootstrap, paired_bootstrap, replicate_indices, replicate_metrics, BootstrapResult,
    PairwiseDelta, DEFAULT_BOOTSTRAP_REPLICATES,
};
pub use friedman::{friedman, FriedmanResult};
pub use holm::{holm_correct, HolmOutcome};
pub use rank::{
    kendall_tau_b, kendall_tau_b_test, midranks, spearman_rho, spearman_test, CorrelationTest,
};
pub use wilcoxon::{wilcoxon_signed_rank, WilcoxonResult};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::risk::RiskField;

/// Complete n-prompt by k-model matrix of cumulative log risks,
/// row-major by prompt.
#[derive(Clone, Debug, PartialEq)]
pub struct RiskMatrix {
    models: Vec<String>,
    prompts: Vec<String>,
    values: Vec<f64>,
}

impl RiskMatrix {
    pub fn new(
        models: Vec<String>,
        prompts: Vec<String>,
        values: Vec<f64>,
    ) -> Result<Self, StatsError> {
        if values.len() != models.len() * prompts.len() {
            return Err(StatsError::DimensionMismatch {
                expected: models.len() * prompts.len(),
                got: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(StatsError::NonFiniteValue { value: bad });
        }
        Ok(RiskMatrix {
            models,
            prompts,
            values,
        })
    }

    /// Extracts the cumulative log risks of a risk field; every cell must
    /// be assessed.
    pub fn from_field(field: &RiskField) -> Result<Self, StatsError> {
        let (k, n) = (field.k(), field.n());
        let mut values = Vec::with_capacity(n * k);
        for q in 0..n {
            for m in 0..k {
                match field.cell(m, q) {
                    Some(cell) => values.push(cell.cumulative),
                    None => {
                        return Err(StatsError::MissingCell {
                            model_id: field.models()[m].clone(),
                            prompt_id: field.prompts()[q].clone(),
                        })
                    }
                }
            }
        }
        RiskMatrix::new(field.models().to_vec(), field.prompts().to_vec(), values)
    }

    pub fn models(&self) -> &[String] {
        &self.models
    }

    pub fn prompts(&self) -> &[String] {
        &self.prompts
    }

    /// Prompt count n (rows).
    pub fn n(&self) -> usize {
        self.prompts.len()
    }

    /// Model count k (columns).
    pub fn k(&self) -> usize {
        self.models.len()
    }

    pub fn value(&self, prompt: usize, model: usize) -> f64 {
        self.values[prompt * self.models.len() + model]
    }

    /// One prompt's values across models.
    pub fn row(&self, prompt: usize) -> &[f64] {
        let k = self.models.len();
        &self.values[prompt * k..(prompt + 1) * k]
    }

    /// One model's values across prompts.
    pub fn column(&self, model: usize) -> Vec<f64> {
        (0..self.n()).map(|q| self.value(q, model)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatsError {
    LengthMismatch { left: usize, right: usize },
    EmptySample,
    TooShort { n: usize, min: usize },
    DegenerateRanking,
    PValueOutOfRange { value: f64 },
    AlphaOutOfRange { alpha: f64 },
    TooFewRows { n: usize },
    TooFewColumns { k: usize },
    MissingCell { model_id: String, prompt_id: String },
    DimensionMismatch { expected: usize, got: usize },
    NonFiniteValue { value: f64 },
    NonFiniteMetric { model_id: String },
    NonFiniteReplicate { replicate: u32, model_id: String },
    ZeroReplicates,
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::LengthMismatch { left, right } => {
                write!(f, "paired samples differ in length: {left} vs {right}")
            }
            StatsError::EmptySample => write!(f, "sample is empty"),
            StatsError::TooShort { n, min } => {
                write!(f, "sample of size {n} is below the minimum of {min}")
            }
            StatsError::DegenerateRanking => {
                write!(f, "rank correlation undefined: an input is entirely tied")
            }
            StatsError::PValueOutOfRange { value } => {
                write!(f, "p-value outside [0, 1]: {value}")
            }
            StatsError::AlphaOutOfRange { alpha } => {
                write!(f, "significance level must lie in (0, 1), got {alpha}")
            }
            StatsError::TooFewRows { n } => {
                write!(f, "need at least 2 prompts, got {n}")
            }
            StatsError::TooFewColumns { k } => {
                write!(f, "need at least 2 models, got {k}")
            }
            StatsError::MissingCell { model_id, prompt_id } => write!(
                f,
                "risk matrix requires complete data, missing (model `{model_id}`, prompt `{prompt_id}`)"
            ),
            StatsError::DimensionMismatch { expected, got } => {
                write!(f, "matrix needs {expected} values, got {got}")
            }
            StatsError::NonFiniteValue { value } => {
                write!(f, "matrix contains a non-finite value: {value}")
            }
            StatsError::NonFiniteMetric { model_id } => {
                write!(f, "metric is non-finite on the full sample for model `{model_id}`")
            }
            StatsError::NonFiniteReplicate { replicate, model_id } => write!(
                f,
                "metric is non-finite in bootstrap replicate {replicate} for model `{model_id}`"
            ),
            StatsError::ZeroReplicates => write!(f, "bootstrap needs at least 1 replicate"),
        }
    }
}

impl core::error::Error for StatsError {}
