//! Argument parsing, config resolution, and the subcommand drivers.
//!
//! Exit codes: 0 success, 1 validation failure (unreadable or invalid
//! input, analysis errors), 2 usage error (bad flags, bad config).
//! Flags override config-file values, which override defaults.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sharp_core::{
    plot_data, policy_summary, CompletenessMode, Corpus, ScoreScale, DEFAULT_ALPHA,
    DEFAULT_ALPHA_GRID, DEFAULT_BOOTSTRAP_REPLICATES, DEFAULT_CATEGORIES, DEFAULT_EPSILON,
    DEFAULT_MIN_OVERLAP, DEFAULT_TAU, DEFAULT_TAU_GRID, DEFAULT_THETA1, DEFAULT_THETA2,
};

use crate::config::load_config;
use crate::ingest::{emit_corpus, parse_corpus};
use crate::pipeline::{
    robustness_bundle, run_pipeline, stats_bundle, Pipeline, PipelineError, RobustnessKnobs,
    DEFAULT_POLICY_WEIGHTS,
};
use crate::report::{
    atomic_write, attribution_table, baseline_corr_table, baselines_table, bootstrap_ci_table,
    concordance_table, delta_cvar_table, dependence_table, eta2_table, flips_table,
    friedman_table, harm_table, lojo_tables, mad_table, plot_histograms_table,
    plot_quantiles_table, policy_table, profile_table, scores_table, sorted_by_cvar,
    subindex_cvars_table, subindex_means_table, sweep_tables, wilcoxon_table, Emitter,
    OutputFormat,
};
use crate::synth::{generate_synthetic, SynthSpec};

#[derive(Parser)]
#[command(
    name = "sharp",
    version,
    about = "Multi-judge harm assessment analytics: sub-index scoring, tail-risk profiles, \
             statistical comparisons, robustness checks, and deterministic report emission."
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct GlobalArgs {
    /// JSONL corpus of judge assessments.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Directory for emitted files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat key=value config file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Judge-ensembling LSE temperature.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// CVaR tail level.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Offset inside the log-risk logarithm.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Bootstrap replicate count.
    #[arg(long, global = true)]
    boot: Option<u32>,
    /// Master RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Bootstrap worker threads; 0 uses the default pool size.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Comma-separated bias category set.
    #[arg(long, global = true)]
    categories: Option<String>,
    /// Completeness mode: strict or partial.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Treat ordinal score fields as already normalized to [0,1].
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pre_normalized: Option<bool>,
    /// Four comma-separated policy weights summing to 1.
    #[arg(long, global = true)]
    weights: Option<String>,
    /// Comma-separated temperatures for the tau sweep.
    #[arg(long, global = true)]
    tau_grid: Option<String>,
    /// Comma-separated tail levels for the alpha sweep.
    #[arg(long, global = true)]
    alpha_grid: Option<String>,
    /// Minimum shared prompts for a judge-concordance pair.
    #[arg(long, global = true)]
    min_overlap: Option<usize>,
    /// Near-tie threshold on mean log-risk gaps.
    #[arg(long, global = true)]
    theta1: Option<f64>,
    /// Amplification threshold on CVaR gaps.
    #[arg(long, global = true)]
    theta2: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus and report its shape.
    Validate,
    /// Emit per-judge sub-index scores and the ensembled harm field.
    Score,
    /// Emit model risk profiles, sub-index tables, tail attribution, and
    /// the policy-weighted summary.
    Profile,
    /// Emit the statistical battery over cumulative log-risk.
    Stats,
    /// Emit sensitivity sweeps, judge-agreement checks, dependence
    /// analysis, and baseline-aggregate comparisons.
    Robustness,
    /// Emit every analysis table plus plot-ready distribution data.
    Report,
    /// Generate a seeded synthetic corpus as JSONL.
    Synth(SynthArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Model count; Beta means step evenly between the bounds.
    #[arg(long, default_value_t = 3)]
    models: usize,
    #[arg(long, default_value_t = 20)]
    prompts: usize,
    #[arg(long, default_value_t = 3)]
    judges: usize,
    /// Standard deviation of per-judge score jitter.
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    /// Beta mean of the safest model.
    #[arg(long, default_value_t = 0.1)]
    mean_lo: f64,
    /// Beta mean of the riskiest model.
    #[arg(long, default_value_t = 0.6)]
    mean_hi: f64,
    /// Beta concentration (sum of its two parameters).
    #[arg(long, default_value_t = 8.0)]
    concentration: f64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Validation(String),
}

impl CliError {
    fn usage(msg: impl Display) -> CliError {
        CliError::Usage(msg.to_string())
    }

    fn validation(msg: impl Display) -> CliError {
        CliError::Validation(msg.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Debug)]
struct Settings {
    input: Option<PathBuf>,
    out: Option<PathBuf>,
    tau: f64,
    alpha: f64,
    epsilon: f64,
    boot: u32,
    seed: u64,
    format: OutputFormat,
    workers: usize,
    categories: Vec<String>,
    mode: CompletenessMode,
    scale: ScoreScale,
    weights: [f64; 4],
    tau_grid: Vec<f64>,
    alpha_grid: Vec<f64>,
    min_overlap: usize,
    theta1: f64,
    theta2: f64,
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{raw}`")))
}

/// Flag value, else parsed config value, else default.
fn resolve<T: FromStr>(
    flag: Option<T>,
    config: &BTreeMap<String, String>,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    match flag {
        Some(v) => Ok(v),
        None => match config.get(key) {
            Some(raw) => parse_value(key, raw),
            None => Ok(default),
        },
    }
}

fn resolve_text(
    flag: Option<String>,
    config: &BTreeMap<String, String>,
    key: &str,
) -> Option<String> {
    flag.or_else(|| config.get(key).cloned())
}

fn parse_f64_list(key: &str, raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|item| parse_value(key, item.trim()))
        .collect()
}

fn check_finite(key: &str, values: &[f64]) -> Result<(), CliError> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(bad) => Err(CliError::Usage(format!("--{key} must be finite, got {bad}"))),
        None => Ok(()),
    }
}

impl Settings {
    fn new(globals: GlobalArgs, config: &BTreeMap<String, String>) -> Result<Settings, CliError> {
        let input = match globals.input {
            Some(p) => Some(p),
            None => config.get("input").map(PathBuf::from),
        };
        let out = match globals.out {
            Some(p) => Some(p),
            None => config.get("out").map(PathBuf::from),
        };

        let tau = resolve(globals.tau, config, "tau", DEFAULT_TAU)?;
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(CliError::Usage(format!("--tau must be > 0, got {tau}")));
        }
        let alpha = resolve(globals.alpha, config, "alpha", DEFAULT_ALPHA)?;
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CliError::Usage(format!(
                "--alpha must be in (0, 1], got {alpha}"
            )));
        }
        let epsilon = resolve(globals.epsilon, config, "epsilon", DEFAULT_EPSILON)?;
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(CliError::Usage(format!(
                "--epsilon must be > 0, got {epsilon}"
            )));
        }
        let boot = resolve(globals.boot, config, "boot", DEFAULT_BOOTSTRAP_REPLICATES)?;
        if boot == 0 {
            return Err(CliError::usage("--boot must be at least 1"));
        }
        let seed = resolve(globals.seed, config, "seed", 0)?;
        let workers = resolve(globals.workers, config, "workers", 0)?;

        let format = match resolve_text(globals.format, config, "format").as_deref() {
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "--format must be csv or json, got `{other}`"
                )))
            }
        };
        let mode = match resolve_text(globals.mode, config, "mode").as_deref() {
            None | Some("strict") => CompletenessMode::Strict,
            Some("partial") => CompletenessMode::Partial,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "--mode must be strict or partial, got `{other}`"
                )))
            }
        };
        let pre_normalized = resolve(globals.pre_normalized, config, "pre-normalized", false)?;
        let scale = if pre_normalized {
            ScoreScale::Unit
        } else {
            ScoreScale::Ordinal
        };

        let categories = match resolve_text(globals.categories, config, "categories") {
            Some(raw) => {
                let list: Vec<String> = raw
                    .split(',')
                    .map(|c| c.trim().to_string())
                    .filter(|c| !c.is_empty())
                    .collect();
                if list.is_empty() {
                    return Err(CliError::usage("--categories must name at least one category"));
                }
                list
            }
            None => DEFAULT_CATEGORIES.iter().map(|c| c.to_string()).collect(),
        };

        let weights = match resolve_text(globals.weights, config, "weights") {
            Some(raw) => {
                let list = parse_f64_list("weights", &raw)?;
                let arr: [f64; 4] = list.try_into().map_err(|_| {
                    CliError::usage("--weights takes exactly four comma-separated values")
                })?;
                if arr.iter().any(|w| *w < 0.0 || !w.is_finite()) {
                    return Err(CliError::usage("--weights must be non-negative and finite"));
                }
                let sum: f64 = arr.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(CliError::Usage(format!(
                        "--weights must sum to 1, got {sum}"
                    )));
                }
                arr
            }
            None => DEFAULT_POLICY_WEIGHTS,
        };

        let tau_grid = match resolve_text(globals.tau_grid, config, "tau-grid") {
            Some(raw) => parse_f64_list("tau-grid", &raw)?,
            None => DEFAULT_TAU_GRID.to_vec(),
        };
        check_finite("tau-grid", &tau_grid)?;
        if tau_grid.is_empty() || tau_grid.iter().any(|&t| t <= 0.0) {
            return Err(CliError::usage("--tau-grid needs one or more positive values"));
        }
        let alpha_grid = match resolve_text(globals.alpha_grid, config, "alpha-grid") {
            Some(raw) => parse_f64_list("alpha-grid", &raw)?,
            None => DEFAULT_ALPHA_GRID.to_vec(),
        };
        check_finite("alpha-grid", &alpha_grid)?;
        if alpha_grid.is_empty() || alpha_grid.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(CliError::usage("--alpha-grid needs values in (0, 1]"));
        }

        let min_overlap = resolve(globals.min_overlap, config, "min-overlap", DEFAULT_MIN_OVERLAP)?;
        let theta1 = resolve(globals.theta1, config, "theta1", DEFAULT_THETA1)?;
        let theta2 = resolve(globals.theta2, config, "theta2", DEFAULT_THETA2)?;
        if !(theta1 >= 0.0 && theta1.is_finite() && theta2 >= 0.0 && theta2.is_finite()) {
            return Err(CliError::usage("--theta1 and --theta2 must be >= 0"));
        }

        Ok(Settings {
            input,
            out,
            tau,
            alpha,
            epsilon,
            boot,
            seed,
            format,
            workers,
            categories,
            mode,
            scale,
            weights,
            tau_grid,
            alpha_grid,
            min_overlap,
            theta1,
            theta2,
        })
    }

    fn input(&self) -> Result<&PathBuf, CliError> {
        self.input.as_ref().ok_or_else(|| CliError::usage("missing --input"))
    }

    fn out(&self) -> Result<&PathBuf, CliError> {
        self.out.as_ref().ok_or_else(|| CliError::usage("missing --out"))
    }

    /// The sweeps compare against the run's own tau and alpha, so both
    /// must sit on their grids.
    fn check_grids(&self) -> Result<(), CliError> {
        if !self.tau_grid.contains(&self.tau) {
            return Err(CliError::Usage(format!(
                "--tau {} is not on --tau-grid {:?}",
                self.tau, self.tau_grid
            )));
        }
        if !self.alpha_grid.contains(&self.alpha) {
            return Err(CliError::Usage(format!(
                "--alpha {} is not on --alpha-grid {:?}",
                self.alpha, self.alpha_grid
            )));
        }
        Ok(())
    }

    fn knobs(&self) -> RobustnessKnobs {
        RobustnessKnobs {
            tau: self.tau,
            tau_grid: self.tau_grid.clone(),
            alpha: self.alpha,
            alpha_grid: self.alpha_grid.clone(),
            epsilon: self.epsilon,
            min_overlap: self.min_overlap,
            theta1: self.theta1,
            theta2: self.theta2,
        }
    }

    fn run_config(&self, command: &str) -> Value {
        json!({
            "command": command,
            "input": self.input.as_ref().map(|p| p.display().to_string()),
            "categories": self.categories,
            "mode": match self.mode {
                CompletenessMode::Strict => "strict",
                CompletenessMode::Partial => "partial",
            },
            "pre_normalized": matches!(self.scale, ScoreScale::Unit),
            "tau": self.tau,
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "boot": self.boot,
            "seed": self.seed,
            "format": self.format.extension(),
            "workers": self.workers,
            "weights": self.weights.to_vec(),
            "tau_grid": self.tau_grid,
            "alpha_grid": self.alpha_grid,
            "min_overlap": self.min_overlap,
            "theta1": self.theta1,
            "theta2": self.theta2,
        })
    }
}

/// Parses argv, runs the selected subcommand, and returns the process
/// exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.globals.config {
        Some(path) => load_config(path).map_err(CliError::usage)?,
        None => BTreeMap::new(),
    };
    let settings = Settings::new(cli.globals, &config)?;
    match cli.command {
        Command::Validate => cmd_validate(&settings),
        Command::Score => cmd_score(&settings),
        Command::Profile => cmd_profile(&settings),
        Command::Stats => cmd_stats(&settings),
        Command::Robustness => cmd_robustness(&settings),
        Command::Report => cmd_report(&settings),
        Command::Synth(args) => cmd_synth(&settings, &args),
    }
}

fn load_corpus(settings: &Settings) -> Result<Corpus, CliError> {
    let parsed = parse_corpus(
        settings.input()?,
        &settings.categories,
        settings.scale,
        settings.mode,
    )
    .map_err(CliError::validation)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(parsed.corpus)
}

fn build_pipeline(settings: &Settings) -> Result<Pipeline, CliError> {
    let corpus = load_corpus(settings)?;
    Ok(run_pipeline(&corpus, settings.tau, settings.epsilon)?)
}

fn cmd_validate(settings: &Settings) -> Result<(), CliError> {
    let parsed = parse_corpus(
        settings.input()?,
        &settings.categories,
        settings.scale,
        settings.mode,
    )
    .map_err(CliError::validation)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    let corpus = &parsed.corpus;
    println!("records: {}", corpus.records().len());
    println!("models: {}", corpus.k());
    println!("prompts: {}", corpus.n());
    println!("judges: {}", corpus.judge_count());
    println!("gaps: {}", corpus.gap_count());
    println!("warnings: {}", parsed.warnings.len());
    Ok(())
}

fn emit_score_section(emitter: &mut Emitter, pipeline: &Pipeline) -> Result<(), CliError> {
    emitter.emit("scores", &scores_table(&pipeline.scored))?;
    emitter.emit("harm", &harm_table(&pipeline.harm, &pipeline.risk))?;
    Ok(())
}

fn emit_profile_section(
    emitter: &mut Emitter,
    pipeline: &Pipeline,
    settings: &Settings,
) -> Result<(), CliError> {
    let profiles = pipeline.profiles(settings.alpha).map_err(CliError::validation)?;
    let sorted = sorted_by_cvar(&profiles);
    emitter.emit("profile", &profile_table(&sorted))?;
    emitter.emit("subindex_means", &subindex_means_table(&sorted))?;
    emitter.emit("subindex_cvars", &subindex_cvars_table(&sorted))?;
    emitter.emit("attribution", &attribution_table(&sorted))?;
    let policy = policy_summary(&pipeline.harm, settings.weights).map_err(CliError::validation)?;
    emitter.emit("policy", &policy_table(&policy))?;
    Ok(())
}

/// Stats need a complete risk matrix and at least two models; in
/// lenient mode those shape problems skip the section instead of
/// failing the run.
fn emit_stats_section(
    emitter: &mut Emitter,
    pipeline: &Pipeline,
    settings: &Settings,
    lenient: bool,
) -> Result<(), CliError> {
    let bundle = pipeline.matrix().map_err(PipelineError::Stats).and_then(|matrix| {
        stats_bundle(
            &matrix,
            settings.alpha,
            settings.boot,
            settings.seed,
            settings.workers,
        )
    });
    let bundle = match bundle {
        Ok(b) => b,
        Err(PipelineError::Stats(e)) if lenient => {
            eprintln!("warning: skipping statistics: {e}");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    emitter.emit("bootstrap_ci", &bootstrap_ci_table(&bundle.bootstrap))?;
    emitter.emit("delta_cvar", &delta_cvar_table(&bundle.bootstrap))?;
    emitter.emit("friedman", &friedman_table(&bundle.friedman))?;
    emitter.emit("wilcoxon_holm", &wilcoxon_table(&bundle.wilcoxon))?;
    emitter.emit("eta2", &eta2_table(&bundle.anova))?;
    Ok(())
}

fn emit_robustness_section(
    emitter: &mut Emitter,
    pipeline: &Pipeline,
    settings: &Settings,
    lenient: bool,
) -> Result<(), CliError> {
    settings.check_grids()?;
    let bundle = match robustness_bundle(pipeline, &settings.knobs()) {
        Ok(b) => b,
        Err(e) if lenient => {
            eprintln!("warning: skipping robustness: {e}");
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let (values, agreement, spread) = sweep_tables(&bundle.tau_sweep);
    emitter.emit("tau_sweep", &values)?;
    emitter.emit("tau_sweep_agreement", &agreement)?;
    emitter.emit("tau_sweep_spread", &spread)?;
    let (values, agreement, spread) = sweep_tables(&bundle.alpha_sweep);
    emitter.emit("alpha_sweep", &values)?;
    emitter.emit("alpha_sweep_agreement", &agreement)?;
    emitter.emit("alpha_sweep_spread", &spread)?;
    match &bundle.agreement {
        Some(agreement) => {
            let (ordering, cvars) = lojo_tables(&agreement.lojo, pipeline.scored.models());
            emitter.emit("lojo", &ordering)?;
            emitter.emit("lojo_cvars", &cvars)?;
            emitter.emit("mad", &mad_table(&agreement.mad))?;
            emitter.emit("concordance", &concordance_table(&agreement.concordance))?;
        }
        None => eprintln!("warning: single-judge panel, skipping agreement analyses"),
    }
    emitter.emit("dependence", &dependence_table(&bundle.dependence))?;
    emitter.emit("baselines", &baselines_table(&bundle.baselines))?;
    emitter.emit("baseline_correlations", &baseline_corr_table(&bundle.baselines))?;
    emitter.emit("flips", &flips_table(&bundle.baselines))?;
    Ok(())
}

fn emit_plot_section(emitter: &mut Emitter, pipeline: &Pipeline) -> Result<(), CliError> {
    let records = plot_data(&pipeline.harm, &pipeline.risk).map_err(CliError::validation)?;
    emitter.emit("plot_quantiles", &plot_quantiles_table(&records))?;
    emitter.emit("plot_histograms", &plot_histograms_table(&records))?;
    Ok(())
}

fn cmd_score(settings: &Settings) -> Result<(), CliError> {
    let pipeline = build_pipeline(settings)?;
    let mut emitter = Emitter::new(settings.out()?, settings.format)?;
    emit_score_section(&mut emitter, &pipeline)?;
    emitter.finish(&settings.run_config("score"))?;
    Ok(())
}

fn cmd_profile(settings: &Settings) -> Result<(), CliError> {
    let pipeline = build_pipeline(settings)?;
    let mut emitter = Emitter::new(settings.out()?, settings.format)?;
    emit_profile_section(&mut emitter, &pipeline, settings)?;
    emitter.finish(&settings.run_config("profile"))?;
    Ok(())
}

fn cmd_stats(settings: &Settings) -> Result<(), CliError> {
    let pipeline = build_pipeline(settings)?;
    let mut emitter = Emitter::new(settings.out()?, settings.format)?;
    emit_stats_section(&mut emitter, &pipeline, settings, false)?;
    emitter.finish(&settings.run_config("stats"))?;
    Ok(())
}

fn cmd_robustness(settings: &Settings) -> Result<(), CliError> {
    let pipeline = build_pipeline(settings)?;
    let mut emitter = Emitter::new(settings.out()?, settings.format)?;
    emit_robustness_section(&mut emitter, &pipeline, settings, false)?;
    emitter.finish(&settings.run_config("robustness"))?;
    Ok(())
}

fn cmd_report(settings: &Settings) -> Result<(), CliError> {
    settings.check_grids()?;
    let pipeline = build_pipeline(settings)?;
    let mut emitter = Emitter::new(settings.out()?, settings.format)?;
    emit_score_section(&mut emitter, &pipeline)?;
    emit_profile_section(&mut emitter, &pipeline, settings)?;
    emit_stats_section(&mut emitter, &pipeline, settings, true)?;
    emit_robustness_section(&mut emitter, &pipeline, settings, true)?;
    emit_plot_section(&mut emitter, &pipeline)?;
    emitter.finish(&settings.run_config("report"))?;
    Ok(())
}

fn cmd_synth(settings: &Settings, args: &SynthArgs) -> Result<(), CliError> {
    let spec = SynthSpec::spread(
        settings.seed,
        args.models,
        args.prompts,
        args.judges,
        args.noise,
        args.mean_lo,
        args.mean_hi,
        args.concentration,
    )
    .map_err(CliError::usage)?;
    let corpus = generate_synthetic(&spec).map_err(CliError::validation)?;
    let mut bytes = Vec::new();
    emit_corpus(&corpus, &mut bytes)?;
    let dir = settings.out()?;
    std::fs::create_dir_all(dir)?;
    atomic_write(&dir.join("synthetic.jsonl"), &bytes)?;
    Ok(())
}
