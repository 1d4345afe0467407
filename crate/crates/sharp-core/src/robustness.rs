//! Sensitivity and agreement analyses.
//!
//! Temperature and tail-level sweeps check that model orderings survive
//! parameter perturbation; leave-one-judge-out, MAD dispersion, and judge
//! concordance quantify panel agreement; the independence test compares
//! dimension correlations on all prompts against the tail slice; baseline
//! aggregates contrast the tail-aware ranking with simpler summaries and
//! flag decision flips between them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ensemble::{ensemble_corpus, EnsembleError, HarmField};
use crate::fmath;
use crate::risk::{cvar, risk_field, tail_set, RiskError, RiskField};
use crate::stats::{kendall_tau_b, kendall_tau_b_test, spearman_rho, spearman_test, StatsError};
use crate::subindex::{ScoredCorpus, SubIndexVector};

/// Ensembling temperatures swept by default.
pub const DEFAULT_TAU_GRID: [f64; 3] = [0.15, 0.20, 0.25];
/// Tail levels swept by default.
pub const DEFAULT_ALPHA_GRID: [f64; 3] = [0.90, 0.95, 0.975];
/// Minimum prompt overlap for a judge-pair concordance entry.
pub const DEFAULT_MIN_OVERLAP: usize = 25;
/// Near-tie threshold on |delta mean log risk|.
pub const DEFAULT_THETA1: f64 = 0.1;
/// Amplification threshold on |delta CVaR|.
pub const DEFAULT_THETA2: f64 = 0.4;

const DIMENSIONS: [&str; 4] = ["bias", "fairness", "ethics", "epistemic"];

/// Rank agreement of one grid point's model ordering with the reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankCorr {
    pub tau_b: f64,
    pub rho: f64,
}

/// One-parameter sweep of per-model CVaR of cumulative log risk.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    /// Swept parameter, "tau" or "alpha".
    pub parameter: &'static str,
    pub grid: Vec<f64>,
    pub reference: f64,
    pub models: Vec<String>,
    /// statistics[g][m] = CVaR for model m at grid point g.
    pub statistics: Vec<Vec<f64>>,
    /// Per grid point, agreement with the reference point's ordering.
    pub rank_corr: Vec<RankCorr>,
    /// Per model, max minus min of the statistic across the grid.
    pub max_spread: Vec<f64>,
}

/// Ordering agreement after removing one judge from the panel.
#[derive(Clone, Debug, PartialEq)]
pub struct LojoEntry {
    pub omitted_judge: String,
    pub k_models: usize,
    /// Kendall tau-b of the reduced-panel CVaR ordering vs the full panel.
    pub tau_b: f64,
    pub p_value: f64,
    /// Per-model CVaR with the judge removed.
    pub cvars: Vec<f64>,
}

/// Across-judge dispersion of one sub-index dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct MadSummary {
    pub dimension: &'static str,
    /// Mean over (prompt, model) items of the across-judge MAD.
    pub mean: f64,
    /// Population standard deviation over items.
    pub std: f64,
    pub items: usize,
    /// Items with fewer than 2 judges, excluded.
    pub skipped: usize,
}

/// Rank agreement of one judge pair on one dimension, across models.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcordanceSummary {
    pub dimension: &'static str,
    pub judge_a: String,
    pub judge_b: String,
    /// Models contributing a tau (overlap met, ranking non-degenerate).
    pub models: usize,
    pub skipped: usize,
    pub mean_tau: f64,
    pub median_tau: f64,
    pub std_tau: f64,
}

/// Panel-agreement bundle assembled from the three agreement analyses.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementReport {
    pub mad: Vec<MadSummary>,
    pub lojo: Vec<LojoEntry>,
    pub concordance: Vec<ConcordanceSummary>,
    pub min_overlap: usize,
}

/// Dimension dependence for one model: mean Spearman rho over the six
/// unordered dimension pairs, on all prompts and on the tail slice.
#[derive(Clone, Debug, PartialEq)]
pub struct DependenceRow {
    pub model_id: String,
    /// NaN when every pair is undefined.
    pub mean_rho_all: f64,
    pub mean_rho_tail: f64,
    pub tail_size: usize,
    /// Pairs excluded as undefined (constant dimension or tiny sample).
    pub undefined_all: usize,
    pub undefined_tail: usize,
    /// Annotation: tail-slice mean sits below the all-prompt mean.
    pub tail_below_all: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DependenceReport {
    pub alpha: f64,
    pub rows: Vec<DependenceRow>,
}

/// Per-model values of the five competing aggregates.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineRow {
    pub model_id: String,
    pub mean_log_risk: f64,
    pub cvar_log_risk: f64,
    pub cvar_radius: f64,
    pub cvar_max_subindex: f64,
    pub mean_any_harm: f64,
}

/// Rank agreement between two baseline metrics across models.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineCorr {
    pub metric_a: &'static str,
    pub metric_b: &'static str,
    pub rho: f64,
    pub rho_p: f64,
    pub tau_b: f64,
    /// True when a metric is constant across models and the
    /// correlation is undefined.
    pub degenerate: bool,
}

/// How a model pair's ordering moved between mean and CVaR.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    /// Mean log risk and CVaR order the pair in strictly opposite ways.
    OrderDisagreement,
    /// Means are nearly tied while CVaRs differ widely.
    NearTieAmplification,
}

impl FlipKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FlipKind::OrderDisagreement => "order_disagreement",
            FlipKind::NearTieAmplification => "near_tie_amplification",
        }
    }
}

/// One detected decision flip between mean- and tail-based rankings.
#[derive(Clone, Debug, PartialEq)]
pub struct FlipPair {
    pub model_a: String,
    pub model_b: String,
    pub kind: FlipKind,
    pub mean_a: f64,
    pub mean_b: f64,
    pub cvar_a: f64,
    pub cvar_b: f64,
}

/// Baseline-aggregate comparison with correlations and decision flips.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineReport {
    pub alpha: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub rows: Vec<BaselineRow>,
    pub correlations: Vec<BaselineCorr>,
    pub flips: Vec<FlipPair>,
}

/// Agreement of two per-model statistic vectors, with ties to the sweep
/// conventions: a single model agrees trivially, an exact repeat of the
/// reference agrees exactly, and a degenerate (constant) comparison is NaN.
fn ordering_agreement(stats: &[f64], reference: &[f64], is_reference: bool) -> RankCorr {
    if is_reference || stats.len() < 2 {
        return RankCorr { tau_b: 1.0, rho: 1.0 };
    }
    let tau_b = kendall_tau_b(stats, reference).unwrap_or(f64::NAN);
    let rho = spearman_rho(stats, reference).unwrap_or(f64::NAN);
    RankCorr { tau_b, rho }
}

fn sweep_from_statistics(
    parameter: &'static str,
    grid: &[f64],
    reference: f64,
    models: Vec<String>,
    statistics: Vec<Vec<f64>>,
) -> Result<SweepReport, RobustnessError> {
    let ref_idx = grid
        .iter()
        .position(|&g| g == reference)
        .ok_or(RobustnessError::ReferenceNotInGrid { reference })?;
    let rank_corr = statistics
        .iter()
        .enumerate()
        .map(|(g, stats)| ordering_agreement(stats, &statistics[ref_idx], g == ref_idx))
        .collect();
    let max_spread = (0..models.len())
        .map(|m| {
            let column = statistics.iter().map(|row| row[m]);
            let max = column.clone().fold(f64::NEG_INFINITY, f64::max);
            let min = column.fold(f64::INFINITY, f64::min);
            max - min
        })
        .collect();
    Ok(SweepReport {
        parameter,
        grid: grid.to_vec(),
        reference,
        models,
        statistics,
        rank_corr,
        max_spread,
    })
}

fn model_cvars(field: &RiskField, alpha: f64) -> Result<Vec<f64>, RiskError> {
    (0..field.k())
        .map(|m| {
            let ls = field.model_log_risks(m);
            if ls.is_empty() {
                return Err(RiskError::EmptyModelSlice {
                    model_id: field.models()[m].clone(),
                });
            }
            cvar(&ls, alpha)
        })
        .collect()
}

/// Re-runs ensembling and risk compounding at each temperature in the grid
/// and compares the CVaR orderings against the reference temperature.
pub fn tau_sweep(
    scored: &ScoredCorpus,
    grid: &[f64],
    reference: f64,
    alpha: f64,
    epsilon: f64,
) -> Result<SweepReport, RobustnessError> {
    if grid.is_empty() {
        return Err(RobustnessError::EmptyGrid);
    }
    if let Some(&tau) = grid.iter().find(|&&t| !(t > 0.0)) {
        return Err(RobustnessError::NonPositiveTau { tau });
    }
    let mut statistics = Vec::with_capacity(grid.len());
    for &tau in grid {
        let harm = ensemble_corpus(scored, tau)?;
        let risk = risk_field(&harm, epsilon)?;
        statistics.push(model_cvars(&risk, alpha)?);
    }
    sweep_from_statistics("tau", grid, reference, scored.models().to_vec(), statistics)
}

/// CVaR at each tail level in the grid, compared against the reference
/// level's ordering.
pub fn alpha_sweep(
    field: &RiskField,
    grid: &[f64],
    reference: f64,
) -> Result<SweepReport, RobustnessError> {
    if grid.is_empty() {
        return Err(RobustnessError::EmptyGrid);
    }
    let mut statistics = Vec::with_capacity(grid.len());
    for &alpha in grid {
        statistics.push(model_cvars(field, alpha)?);
    }
    sweep_from_statistics("alpha", grid, reference, field.models().to_vec(), statistics)
}

/// Removes each judge in turn, re-ensembles the remaining panel at the
/// same temperature, and compares the model CVaR ordering with the full
/// panel's.
pub fn leave_one_judge_out(
    scored: &ScoredCorpus,
    tau: f64,
    alpha: f64,
    epsilon: f64,
) -> Result<Vec<LojoEntry>, RobustnessError> {
    if scored.judge_count() < 2 {
        return Err(RobustnessError::TooFewJudges {
            judges: scored.judge_count(),
        });
    }
    let full = model_cvars(&risk_field(&ensemble_corpus(scored, tau)?, epsilon)?, alpha)?;
    let mut entries = Vec::with_capacity(scored.judge_count());
    for j in 0..scored.judge_count() {
        let reduced = scored.without_judge(j);
        let cvars = model_cvars(&risk_field(&ensemble_corpus(&reduced, tau)?, epsilon)?, alpha)?;
        let (tau_b, p_value) = match kendall_tau_b_test(&cvars, &full) {
            Ok(t) => (t.coefficient, t.p_value),
            Err(StatsError::DegenerateRanking) | Err(StatsError::TooShort { .. }) => {
                (f64::NAN, f64::NAN)
            }
            Err(e) => return Err(e.into()),
        };
        entries.push(LojoEntry {
            omitted_judge: scored.judges()[j].clone(),
            k_models: scored.k(),
            tau_b,
            p_value,
            cvars,
        });
    }
    Ok(entries)
}

/// Mean absolute deviation from the item mean; callers guarantee >= 2 values.
fn mean_abs_dev(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| fmath::abs(v - mean)).sum::<f64>() / values.len() as f64
}

fn mean_and_pop_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, fmath::sqrt(var))
}

/// Across-judge dispersion of each sub-index dimension, summarized over
/// all (prompt, model) items with at least two judges.
pub fn mad_dispersion(scored: &ScoredCorpus) -> Result<Vec<MadSummary>, RobustnessError> {
    if scored.judge_count() < 2 {
        return Err(RobustnessError::TooFewJudges {
            judges: scored.judge_count(),
        });
    }
    let mut per_dim: [Vec<f64>; 4] = Default::default();
    let mut skipped = 0usize;
    let mut panel: Vec<&SubIndexVector> = Vec::with_capacity(scored.judge_count());
    for m in 0..scored.k() {
        for q in 0..scored.n() {
            panel.clear();
            panel.extend((0..scored.judge_count()).filter_map(|j| scored.vector(m, q, j)));
            if panel.len() < 2 {
                skipped += 1;
                continue;
            }
            for (d, acc) in per_dim.iter_mut().enumerate() {
                let values: Vec<f64> = panel.iter().map(|v| v.as_array()[d]).collect();
                acc.push(mean_abs_dev(&values));
            }
        }
    }
    if per_dim[0].is_empty() {
        return Err(RobustnessError::NoUsableItems);
    }
    Ok(DIMENSIONS
        .iter()
        .zip(&per_dim)
        .map(|(&dimension, mads)| {
            let (mean, std) = mean_and_pop_std(mads);
            MadSummary {
                dimension,
                mean,
                std,
                items: mads.len(),
                skipped,
            }
        })
        .collect())
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Kendall tau-b per (dimension, judge pair, model) over overlapping
/// prompts, summarized across models. Pairs below the overlap threshold
/// or with degenerate rankings are skipped and counted.
pub fn judge_concordance(
    scored: &ScoredCorpus,
    min_overlap: usize,
) -> Result<Vec<ConcordanceSummary>, RobustnessError> {
    let kj = scored.judge_count();
    if kj < 2 {
        return Err(RobustnessError::TooFewJudges { judges: kj });
    }
    let mut summaries = Vec::new();
    for (d, &dimension) in DIMENSIONS.iter().enumerate() {
        for a in 0..kj {
            for b in a + 1..kj {
                let mut taus = Vec::new();
                let mut skipped = 0usize;
                for m in 0..scored.k() {
                    let mut xs = Vec::new();
                    let mut ys = Vec::new();
                    for q in 0..scored.n() {
                        if let (Some(va), Some(vb)) =
                            (scored.vector(m, q, a), scored.vector(m, q, b))
                        {
                            xs.push(va.as_array()[d]);
                            ys.push(vb.as_array()[d]);
                        }
                    }
                    if xs.len() < min_overlap {
                        skipped += 1;
                        continue;
                    }
                    match kendall_tau_b(&xs, &ys) {
                        Ok(tau) => taus.push(tau),
                        Err(StatsError::DegenerateRanking) | Err(StatsError::TooShort { .. }) => {
                            skipped += 1
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                let (mean_tau, median_tau, std_tau) = if taus.is_empty() {
                    (f64::NAN, f64::NAN, f64::NAN)
                } else {
                    let mut sorted = taus.clone();
                    sorted.sort_by(f64::total_cmp);
                    let (mean, std) = mean_and_pop_std(&taus);
                    (mean, median(&sorted), std)
                };
                summaries.push(ConcordanceSummary {
                    dimension,
                    judge_a: scored.judges()[a].clone(),
                    judge_b: scored.judges()[b].clone(),
                    models: taus.len(),
                    skipped,
                    mean_tau,
                    median_tau,
                    std_tau,
                });
            }
        }
    }
    Ok(summaries)
}

/// Mean of defined values with the undefined count; NaN mean when none.
fn mean_of_defined(values: &[Option<f64>]) -> (f64, usize) {
    let defined: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    let undefined = values.len() - defined.len();
    if defined.is_empty() {
        (f64::NAN, undefined)
    } else {
        (defined.iter().sum::<f64>() / defined.len() as f64, undefined)
    }
}

fn pairwise_rho(columns: &[Vec<f64>; 4]) -> Vec<Option<f64>> {
    let mut rhos = Vec::with_capacity(6);
    for d1 in 0..4 {
        for d2 in d1 + 1..4 {
            rhos.push(spearman_rho(&columns[d1], &columns[d2]).ok());
        }
    }
    rhos
}

/// Spearman dependence among the four harm dimensions, per model, on all
/// prompts and again on the cumulative-log-risk tail slice.
pub fn independence_test(
    harm: &HarmField,
    risk: &RiskField,
    alpha: f64,
) -> Result<DependenceReport, RobustnessError> {
    if harm.models() != risk.models() || harm.prompts() != risk.prompts() {
        return Err(RobustnessError::GridMismatch);
    }
    let mut rows = Vec::with_capacity(harm.k());
    for m in 0..harm.k() {
        let mut columns: [Vec<f64>; 4] = Default::default();
        let mut ls = Vec::new();
        for q in 0..harm.n() {
            if let (Some(hv), Some(cell)) = (harm.vector(m, q), risk.cell(m, q)) {
                for (d, x) in hv.as_array().into_iter().enumerate() {
                    columns[d].push(x);
                }
                ls.push(cell.cumulative);
            }
        }
        if ls.is_empty() {
            return Err(RiskError::EmptyModelSlice {
                model_id: harm.models()[m].clone(),
            }
            .into());
        }
        let (mean_rho_all, undefined_all) = mean_of_defined(&pairwise_rho(&columns));

        let tail = tail_set(&ls, alpha)?;
        let mut tail_columns: [Vec<f64>; 4] = Default::default();
        for &q in &tail {
            for d in 0..4 {
                tail_columns[d].push(columns[d][q]);
            }
        }
        let (mean_rho_tail, undefined_tail) = mean_of_defined(&pairwise_rho(&tail_columns));

        rows.push(DependenceRow {
            model_id: harm.models()[m].clone(),
            mean_rho_all,
            mean_rho_tail,
            tail_size: tail.len(),
            undefined_all,
            undefined_tail,
            tail_below_all: mean_rho_tail < mean_rho_all,
        });
    }
    Ok(DependenceReport { alpha, rows })
}

const BASELINE_METRICS: [&str; 5] = [
    "mean_log_risk",
    "cvar_log_risk",
    "cvar_radius",
    "cvar_max_subindex",
    "mean_any_harm",
];

/// Compares the tail-aware ranking with simpler aggregates: per-model
/// values, all pairwise rank correlations, and decision-flip detection
/// between mean and CVaR of cumulative log risk.
pub fn baseline_aggregates(
    risk: &RiskField,
    harm: &HarmField,
    alpha: f64,
    theta1: f64,
    theta2: f64,
) -> Result<BaselineReport, RobustnessError> {
    if harm.models() != risk.models() || harm.prompts() != risk.prompts() {
        return Err(RobustnessError::GridMismatch);
    }
    for (name, value) in [("theta1", theta1), ("theta2", theta2)] {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(RobustnessError::InvalidThreshold { name, value });
        }
    }

    let k = risk.k();
    let mut rows = Vec::with_capacity(k);
    for m in 0..k {
        let mut ls = Vec::new();
        let mut radii = Vec::new();
        let mut maxes = Vec::new();
        let mut anys = Vec::new();
        for q in 0..risk.n() {
            if let (Some(cell), Some(hv)) = (risk.cell(m, q), harm.vector(m, q)) {
                ls.push(cell.cumulative);
                radii.push(cell.radius);
                anys.push(cell.any_harm);
                maxes.push(hv.as_array().into_iter().fold(f64::NEG_INFINITY, f64::max));
            }
        }
        if ls.is_empty() {
            return Err(RiskError::EmptyModelSlice {
                model_id: risk.models()[m].clone(),
            }
            .into());
        }
        rows.push(BaselineRow {
            model_id: risk.models()[m].clone(),
            mean_log_risk: ls.iter().sum::<f64>() / ls.len() as f64,
            cvar_log_risk: cvar(&ls, alpha)?,
            cvar_radius: cvar(&radii, alpha)?,
            cvar_max_subindex: cvar(&maxes, alpha)?,
            mean_any_harm: anys.iter().sum::<f64>() / anys.len() as f64,
        });
    }

    let metric_values = |row: &BaselineRow| {
        [
            row.mean_log_risk,
            row.cvar_log_risk,
            row.cvar_radius,
            row.cvar_max_subindex,
            row.mean_any_harm,
        ]
    };
    let mut correlations = Vec::new();
    if k >= 2 {
        for (a, &metric_a) in BASELINE_METRICS.iter().enumerate() {
            for (b, &metric_b) in BASELINE_METRICS.iter().enumerate().skip(a + 1) {
                let xs: Vec<f64> = rows.iter().map(|r| metric_values(r)[a]).collect();
                let ys: Vec<f64> = rows.iter().map(|r| metric_values(r)[b]).collect();
                let entry = match (spearman_test(&xs, &ys), kendall_tau_b(&xs, &ys)) {
                    (Ok(s), Ok(tau)) => BaselineCorr {
                        metric_a,
                        metric_b,
                        rho: s.coefficient,
                        rho_p: s.p_value,
                        tau_b: tau,
                        degenerate: false,
                    },
                    _ => BaselineCorr {
                        metric_a,
                        metric_b,
                        rho: f64::NAN,
                        rho_p: f64::NAN,
                        tau_b: f64::NAN,
                        degenerate: true,
                    },
                };
                correlations.push(entry);
            }
        }
    }

    let mut flips = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let (ra, rb) = (&rows[a], &rows[b]);
            let d_mean = ra.mean_log_risk - rb.mean_log_risk;
            let d_cvar = ra.cvar_log_risk - rb.cvar_log_risk;
            let mut push = |kind| {
                flips.push(FlipPair {
                    model_a: ra.model_id.clone(),
                    model_b: rb.model_id.clone(),
                    kind,
                    mean_a: ra.mean_log_risk,
                    mean_b: rb.mean_log_risk,
                    cvar_a: ra.cvar_log_risk,
                    cvar_b: rb.cvar_log_risk,
                })
            };
            if d_mean * d_cvar < 0.0 {
                push(FlipKind::OrderDisagreement);
            }
            if fmath::abs(d_mean) < theta1 && fmath::abs(d_cvar) > theta2 {
                push(FlipKind::NearTieAmplification);
            }
        }
    }

    Ok(BaselineReport {
        alpha,
        theta1,
        theta2,
        rows,
        correlations,
        flips,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum RobustnessError {
    EmptyGrid,
    NonPositiveTau { tau: f64 },
    ReferenceNotInGrid { reference: f64 },
    TooFewJudges { judges: usize },
    NoUsableItems,
    InvalidThreshold { name: &'static str, value: f64 },
    GridMismatch,
    Ensemble(EnsembleError),
    Risk(RiskError),
    Stats(StatsError),
}

impl fmt::Display for RobustnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobustnessError::EmptyGrid => write!(f, "sweep grid is empty"),
            RobustnessError::NonPositiveTau { tau } => {
                write!(f, "sweep temperatures must be > 0, got {tau}")
            }
            RobustnessError::ReferenceNotInGrid { reference } => {
                write!(f, "reference value {reference} is not a grid point")
            }
            RobustnessError::TooFewJudges { judges } => {
                write!(f, "analysis needs at least 2 judges, got {judges}")
            }
            RobustnessError::NoUsableItems => {
                write!(f, "no (prompt, model) item has two or more judges")
            }
            RobustnessError::InvalidThreshold { name, value } => {
                write!(f, "threshold {name} must be finite and >= 0, got {value}")
            }
            RobustnessError::GridMismatch => {
                write!(f, "harm and risk fields cover different model/prompt grids")
            }
            RobustnessError::Ensemble(e) => write!(f, "{e}"),
            RobustnessError::Risk(e) => write!(f, "{e}"),
            RobustnessError::Stats(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RobustnessError {}

impl From<EnsembleError> for RobustnessError {
    fn from(e: EnsembleError) -> Self {
        RobustnessError::Ensemble(e)
    }
}

impl From<RiskError> for RobustnessError {
    fn from(e: RiskError) -> Self {
        RobustnessError::Risk(e)
    }
}

impl From<StatsError> for RobustnessError {
    fn from(e: StatsError) -> Self {
        RobustnessError::Stats(e)
    }
}
