//! Core analytics for multi-judge harm assessments.
//!
//! The pipeline turns raw per-judge assessment records into comparable
//! model-level tail-risk profiles:
//!
//! 1. [`assessment`] — record schema, validation, normalization maps.
//! 2. [`subindex`] — per-judge sub-indices (bias, fairness, ethics, epistemic).
//! 3. [`ensemble`] — temperature-controlled log-sum-exp pooling across judges.
//! 4. [`risk`] — compounded risk per (model, prompt) and VaR/CVaR profiles
//!    with tail attribution.
//! 5. [`stats`] — paired bootstrap, Friedman/W, Wilcoxon/Holm, variance
//!    decomposition, rank correlations.
//! 6. [`robustness`] — parameter sweeps, judge-agreement analyses,
//!    dimension-dependence checks, baseline comparisons with flip detection.
//! 7. [`plotdata`] — distribution summaries (quantiles + histograms) for
//!    external plotting.
//!
//! The crate is `no_std`-compatible (requires `alloc`). All transcendental
//! math goes through `libm`, so results are identical with and without the
//! `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
// frozen reference values keep every digit of the oracle output
#![allow(clippy::excessive_precision)]
// `!(x > 0.0)` is used throughout to reject NaN along with the sign check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod assessment;
pub mod ensemble;
pub mod plotdata;
pub mod risk;
pub mod robustness;
pub mod stats;
pub mod subindex;

mod fmath;

pub use assessment::{
    norm_bool, norm_explicitness, norm_ordinal, CompletenessMode, Corpus, CorpusError,
    Explicitness, JudgeAssessment, ScoreScale, DEFAULT_CATEGORIES,
};
pub use ensemble::{ensemble_corpus, lse, EnsembleError, HarmField, HarmVector, DEFAULT_TAU};
pub use plotdata::{plot_data, Histogram, PlotRecord, Quantiles, PLOT_METRICS};
pub use risk::{
    any_harm, cvar, harm_radius, log_risk, model_profile, policy_summary, risk_field,
    tail_attribution, tail_set, var, ModelRiskProfile, PolicyEntry, PolicySummary, RiskCell,
    RiskError, RiskField, DEFAULT_ALPHA, DEFAULT_EPSILON,
};
pub use robustness::{
    alpha_sweep, baseline_aggregates, independence_test, judge_concordance, leave_one_judge_out,
    mad_dispersion, tau_sweep, AgreementReport, BaselineCorr, BaselineReport, BaselineRow,
    ConcordanceSummary, DependenceReport, DependenceRow, FlipKind, FlipPair, LojoEntry, MadSummary,
    RankCorr, RobustnessError, SweepReport, DEFAULT_ALPHA_GRID, DEFAULT_MIN_OVERLAP,
    DEFAULT_TAU_GRID, DEFAULT_THETA1, DEFAULT_THETA2,
};
pub use stats::{
    friedman, holm_correct, kendall_tau_b, kendall_tau_b_test, midranks, paired_bootstrap,
    spearman_rho, spearman_test, variance_decomposition, wilcoxon_signed_rank, BootstrapResult,
    CorrelationTest, FriedmanResult, HolmOutcome, PairwiseDelta, RiskMatrix, StatsError,
    VarianceDecomposition, WilcoxonResult, DEFAULT_BOOTSTRAP_REPLICATES,
};
pub use subindex::{
    bias_coverage, bias_subindex, build_subindices, epistemic_subindex, ethics_subindex,
    fairness_subindex, rms_aggregate, score_corpus, BiasParts, ScoredCorpus, SubIndexError,
    SubIndexVector, SubIndexWeights,
};
