//! End-to-end analysis stages shared by the subcommands: corpus to
//! scored panel to harm field to risk field, plus the statistic and
//! robustness bundles built on top.

use std::fmt;

use rayon::prelude::*;
use sharp_core::stats::{assemble_bootstrap, replicate_indices, replicate_metrics};
use sharp_core::{
    alpha_sweep, baseline_aggregates, cvar, ensemble_corpus, friedman, holm_correct,
    independence_test, judge_concordance, leave_one_judge_out, mad_dispersion, model_profile,
    risk_field, score_corpus, tau_sweep, wilcoxon_signed_rank, AgreementReport, BaselineReport,
    BootstrapResult, Corpus, DependenceReport, EnsembleError, FriedmanResult, HarmField,
    ModelRiskProfile, RiskError, RiskField, RiskMatrix, RobustnessError, ScoredCorpus,
    StatsError, SubIndexError, SubIndexWeights, SweepReport, VarianceDecomposition,
    WilcoxonResult,
};

/// Family-wise error rate for the Holm-corrected pairwise matrix.
pub const HOLM_ALPHA: f64 = 0.05;

/// Equal-weight default for the policy-weighted summary.
pub const DEFAULT_POLICY_WEIGHTS: [f64; 4] = [0.25, 0.25, 0.25, 0.25];

/// The three derived stages every subcommand works from.
pub struct Pipeline {
    pub scored: ScoredCorpus,
    pub harm: HarmField,
    pub risk: RiskField,
}

pub fn run_pipeline(corpus: &Corpus, tau: f64, epsilon: f64) -> Result<Pipeline, PipelineError> {
    let scored = score_corpus(corpus, &SubIndexWeights::default())?;
    let harm = ensemble_corpus(&scored, tau)?;
    let risk = risk_field(&harm, epsilon)?;
    Ok(Pipeline { scored, harm, risk })
}

impl Pipeline {
    pub fn profiles(&self, alpha: f64) -> Result<Vec<ModelRiskProfile>, RiskError> {
        (0..self.risk.k())
            .map(|m| model_profile(&self.risk, &self.harm, m, alpha))
            .collect()
    }

    pub fn matrix(&self) -> Result<RiskMatrix, StatsError> {
        RiskMatrix::from_field(&self.risk)
    }
}

/// Paired bootstrap of per-model CVaR over the cumulative log-risk
/// matrix. Replicates are keyed by index, so the result is bitwise
/// identical for any worker count; `workers == 0` uses the default pool
/// size, `workers == 1` stays on the calling thread.
pub fn bootstrap_cvar(
    matrix: &RiskMatrix,
    alpha: f64,
    replicates: u32,
    seed: u64,
    workers: usize,
) -> Result<BootstrapResult, PipelineError> {
    if matrix.n() == 0 || matrix.k() == 0 {
        return Err(PipelineError::Stats(StatsError::EmptySample));
    }
    let metric = |column: &[f64]| cvar(column, alpha).map_or(f64::NAN, |v| v);
    let point: Vec<f64> = (0..matrix.k()).map(|m| metric(&matrix.column(m))).collect();
    let n = matrix.n();
    let replicate = |b: u32| replicate_metrics(matrix, &metric, &replicate_indices(seed, b, n));

    let rows: Vec<Vec<f64>> = if workers == 1 {
        (0..replicates).map(replicate).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| PipelineError::Threads {
                message: e.to_string(),
            })?;
        pool.install(|| (0..replicates).into_par_iter().map(replicate).collect())
    };
    assemble_bootstrap(matrix, "cvar_log_risk", point, rows, seed).map_err(PipelineError::Stats)
}

/// One pairwise signed-rank comparison with its Holm-adjusted verdict.
pub struct WilcoxonRow {
    pub model_a: String,
    pub model_b: String,
    pub result: WilcoxonResult,
    pub adjusted_p: f64,
    pub reject: bool,
}

pub struct StatsBundle {
    pub bootstrap: BootstrapResult,
    pub friedman: FriedmanResult,
    pub wilcoxon: Vec<WilcoxonRow>,
    pub anova: VarianceDecomposition,
}

pub fn stats_bundle(
    matrix: &RiskMatrix,
    alpha: f64,
    replicates: u32,
    seed: u64,
    workers: usize,
) -> Result<StatsBundle, PipelineError> {
    let bootstrap = bootstrap_cvar(matrix, alpha, replicates, seed, workers)?;
    let friedman = friedman(matrix)?;
    let anova = variance_decomposition_checked(matrix)?;

    let k = matrix.k();
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for a in 0..k {
        for b in (a + 1)..k {
            let result = wilcoxon_signed_rank(&matrix.column(a), &matrix.column(b))?;
            pairs.push((a, b, result));
        }
    }
    let pvals: Vec<f64> = pairs.iter().map(|(_, _, r)| r.p_value).collect();
    let outcomes = holm_correct(&pvals, HOLM_ALPHA)?;
    let wilcoxon = pairs
        .into_iter()
        .zip(outcomes)
        .map(|((a, b, result), outcome)| WilcoxonRow {
            model_a: matrix.models()[a].clone(),
            model_b: matrix.models()[b].clone(),
            result,
            adjusted_p: outcome.adjusted_p,
            reject: outcome.reject,
        })
        .collect();
    Ok(StatsBundle {
        bootstrap,
        friedman,
        wilcoxon,
        anova,
    })
}

fn variance_decomposition_checked(
    matrix: &RiskMatrix,
) -> Result<VarianceDecomposition, PipelineError> {
    sharp_core::variance_decomposition(matrix).map_err(PipelineError::Stats)
}

/// Tuning knobs for the robustness battery.
pub struct RobustnessKnobs {
    pub tau: f64,
    pub tau_grid: Vec<f64>,
    pub alpha: f64,
    pub alpha_grid: Vec<f64>,
    pub epsilon: f64,
    pub min_overlap: usize,
    pub theta1: f64,
    pub theta2: f64,
}

pub struct RobustnessBundle {
    pub tau_sweep: SweepReport,
    pub alpha_sweep: SweepReport,
    /// None when the panel has a single judge; the agreement analyses
    /// need at least two.
    pub agreement: Option<AgreementReport>,
    pub dependence: DependenceReport,
    pub baselines: BaselineReport,
}

pub fn robustness_bundle(
    pipeline: &Pipeline,
    knobs: &RobustnessKnobs,
) -> Result<RobustnessBundle, PipelineError> {
    let tau = tau_sweep(
        &pipeline.scored,
        &knobs.tau_grid,
        knobs.tau,
        knobs.alpha,
        knobs.epsilon,
    )?;
    let alpha = alpha_sweep(&pipeline.risk, &knobs.alpha_grid, knobs.alpha)?;
    let agreement = if pipeline.scored.judge_count() < 2 {
        None
    } else {
        Some(AgreementReport {
            mad: mad_dispersion(&pipeline.scored)?,
            lojo: leave_one_judge_out(&pipeline.scored, knobs.tau, knobs.alpha, knobs.epsilon)?,
            concordance: judge_concordance(&pipeline.scored, knobs.min_overlap)?,
            min_overlap: knobs.min_overlap,
        })
    };
    let dependence = independence_test(&pipeline.harm, &pipeline.risk, knobs.alpha)?;
    let baselines = baseline_aggregates(
        &pipeline.risk,
        &pipeline.harm,
        knobs.alpha,
        knobs.theta1,
        knobs.theta2,
    )?;
    Ok(RobustnessBundle {
        tau_sweep: tau,
        alpha_sweep: alpha,
        agreement,
        dependence,
        baselines,
    })
}

#[derive(Debug)]
pub enum PipelineError {
    SubIndex(SubIndexError),
    Ensemble(EnsembleError),
    Risk(RiskError),
    Stats(StatsError),
    Robustness(RobustnessError),
    Threads { message: String },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::SubIndex(e) => e.fmt(f),
            PipelineError::Ensemble(e) => e.fmt(f),
            PipelineError::Risk(e) => e.fmt(f),
            PipelineError::Stats(e) => e.fmt(f),
            PipelineError::Robustness(e) => e.fmt(f),
            PipelineError::Threads { message } => write!(f, "thread pool: {message}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<SubIndexError> for PipelineError {
    fn from(e: SubIndexError) -> Self {
        PipelineError::SubIndex(e)
    }
}

impl From<EnsembleError> for PipelineError {
    fn from(e: EnsembleError) -> Self {
        PipelineError::Ensemble(e)
    }
}

impl From<RiskError> for PipelineError {
    fn from(e: RiskError) -> Self {
        PipelineError::Risk(e)
    }
}

impl From<StatsError> for PipelineError {
    fn from(e: StatsError) -> Self {
        PipelineError::Stats(e)
    }
}

impl From<RobustnessError> for PipelineError {
    fn from(e: RobustnessError) -> Self {
        PipelineError::Robustness(e)
    }
}
