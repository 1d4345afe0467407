//! Deterministic report emission.
//!
//! Tables render to CSV (comma separated, `.` decimal point, unit-scale
//! quantities at six significant digits, log-risk quantities at six
//! decimals, p-values in scientific notation) or to JSON arrays of
//! objects with native numbers. Files are written atomically (sibling
//! temp file, then rename) and every emitted table lands in a manifest
//! with its row count and SHA-256.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use sharp_core::{
    BaselineReport, BootstrapResult, DependenceReport, FriedmanResult, HarmField, LojoEntry,
    MadSummary, ModelRiskProfile, PlotRecord, PolicySummary, RiskField, ScoredCorpus,
    SweepReport, VarianceDecomposition,
};

use crate::pipeline::WilcoxonRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// One typed value; the type picks the rendering.
#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    /// Unit-interval or otherwise scale-free quantity: 6 significant digits.
    Unit(f64),
    /// Log-risk quantity: 6 fixed decimals.
    Log(f64),
    /// Probability: scientific notation.
    P(f64),
    Count(usize),
    Bool(bool),
}

fn nonfinite(x: f64) -> Option<String> {
    if x.is_nan() {
        Some(String::from("nan"))
    } else if x.is_infinite() {
        Some(String::from(if x > 0.0 { "inf" } else { "-inf" }))
    } else {
        None
    }
}

/// Six significant digits in plain decimal notation.
fn fmt_sig(x: f64) -> String {
    if let Some(s) = nonfinite(x) {
        return s;
    }
    if x == 0.0 {
        return String::from("0.000000");
    }
    let decimals = (5 - x.abs().log10().floor() as i64).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

fn fmt_log(x: f64) -> String {
    nonfinite(x).unwrap_or_else(|| format!("{x:.6}"))
}

fn fmt_p(x: f64) -> String {
    nonfinite(x).unwrap_or_else(|| format!("{x:.6e}"))
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Unit(x) => fmt_sig(*x),
            Cell::Log(x) => fmt_log(*x),
            Cell::P(x) => fmt_p(*x),
            Cell::Count(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => json!(s),
            Cell::Unit(x) | Cell::Log(x) | Cell::P(x) => json!(x),
            Cell::Count(n) => json!(*n as u64),
            Cell::Bool(b) => json!(b),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn csv_bytes(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text())).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    fn json_bytes(&self) -> Vec<u8> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.to_string(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&rows).expect("table serialization");
        bytes.push(b'\n');
        bytes
    }
}

/// Temp-then-rename write so readers never observe a partial file.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

struct ManifestEntry {
    file: String,
    rows: usize,
    sha256: String,
}

/// Writes tables into one output directory and tracks them for the
/// manifest.
pub struct Emitter {
    dir: PathBuf,
    format: OutputFormat,
    entries: Vec<ManifestEntry>,
}

impl Emitter {
    pub fn new(dir: &Path, format: OutputFormat) -> io::Result<Emitter> {
        fs::create_dir_all(dir)?;
        Ok(Emitter {
            dir: dir.to_path_buf(),
            format,
            entries: Vec::new(),
        })
    }

    /// Writes `name.csv` or `name.json` and records it.
    pub fn emit(&mut self, name: &str, table: &Table) -> io::Result<()> {
        let bytes = match self.format {
            OutputFormat::Csv => table.csv_bytes(),
            OutputFormat::Json => table.json_bytes(),
        };
        let file = format!("{name}.{}", self.format.extension());
        atomic_write(&self.dir.join(&file), &bytes)?;
        self.entries.push(ManifestEntry {
            file,
            rows: table.rows.len(),
            sha256: sha256_hex(&bytes),
        });
        Ok(())
    }

    /// Writes pre-rendered bytes (e.g. a JSONL corpus) and records them.
    pub fn emit_raw(&mut self, file: &str, bytes: &[u8], rows: usize) -> io::Result<()> {
        atomic_write(&self.dir.join(file), bytes)?;
        self.entries.push(ManifestEntry {
            file: file.to_string(),
            rows,
            sha256: sha256_hex(bytes),
        });
        Ok(())
    }

    /// Writes `run_config.json` and `manifest.json`, consuming the
    /// emitter. Manifest entries are sorted by file name; the manifest
    /// and config themselves are not listed.
    pub fn finish(mut self, run_config: &Value) -> io::Result<()> {
        let mut config_bytes = serde_json::to_vec_pretty(run_config).expect("config serialization");
        config_bytes.push(b'\n');
        atomic_write(&self.dir.join("run_config.json"), &config_bytes)?;

        self.entries.sort_by(|a, b| a.file.cmp(&b.file));
        let files: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({ "file": e.file, "rows": e.rows, "sha256": e.sha256 }))
            .collect();
        let mut manifest_bytes =
            serde_json::to_vec_pretty(&json!({ "files": files })).expect("manifest serialization");
        manifest_bytes.push(b'\n');
        atomic_write(&self.dir.join("manifest.json"), &manifest_bytes)
    }
}

/// Profiles in ascending tail-risk order, the canonical row order for
/// the profile-family tables.
pub fn sorted_by_cvar(profiles: &[ModelRiskProfile]) -> Vec<&ModelRiskProfile> {
    let mut sorted: Vec<&ModelRiskProfile> = profiles.iter().collect();
    sorted.sort_by(|a, b| a.cvar_log_risk.total_cmp(&b.cvar_log_risk));
    sorted
}

pub fn profile_table(sorted: &[&ModelRiskProfile]) -> Table {
    let mut t = Table::new(vec![
        "model",
        "n_prompts",
        "mu_log_risk",
        "sigma_log_risk",
        "var_log_risk",
        "cvar_log_risk",
        "mean_any_harm",
        "cvar_any_harm",
        "cvar_radius",
    ]);
    for p in sorted {
        t.push(vec![
            Cell::Str(p.model_id.clone()),
            Cell::Count(p.n_prompts),
            Cell::Log(p.mu_log_risk),
            Cell::Log(p.sigma_log_risk),
            Cell::Log(p.var_log_risk),
            Cell::Log(p.cvar_log_risk),
            Cell::Unit(p.mean_any_harm),
            Cell::Unit(p.cvar_any_harm),
            Cell::Unit(p.cvar_radius),
        ]);
    }
    t
}

fn dimension_row(model: &str, values: [f64; 4]) -> Vec<Cell> {
    let mut row = vec![Cell::Str(model.to_string())];
    row.extend(values.into_iter().map(Cell::Unit));
    row
}

pub fn subindex_means_table(sorted: &[&ModelRiskProfile]) -> Table {
    let mut t = Table::new(vec!["model", "bias", "fairness", "ethics", "epistemic"]);
    for p in sorted {
        t.push(dimension_row(&p.model_id, p.mean_subindex));
    }
    t
}

pub fn subindex_cvars_table(sorted: &[&ModelRiskProfile]) -> Table {
    let mut t = Table::new(vec!["model", "bias", "fairness", "ethics", "epistemic"]);
    for p in sorted {
        t.push(dimension_row(&p.model_id, p.cvar_subindex));
    }
    t
}

pub fn attribution_table(sorted: &[&ModelRiskProfile]) -> Table {
    let mut t = Table::new(vec![
        "model",
        "cvar_log_risk",
        "share_bias",
        "share_fairness",
        "share_ethics",
        "share_epistemic",
    ]);
    for p in sorted {
        let shares = p.shares.unwrap_or([f64::NAN; 4]);
        let mut row = vec![Cell::Str(p.model_id.clone()), Cell::Log(p.cvar_log_risk)];
        row.extend(shares.into_iter().map(Cell::Unit));
        t.push(row);
    }
    t
}

pub fn policy_table(policy: &PolicySummary) -> Table {
    let mut t = Table::new(vec![
        "model",
        "mean_bias",
        "mean_fairness",
        "mean_ethics",
        "mean_epistemic",
        "score",
    ]);
    for e in &policy.entries {
        let mut row = dimension_row(&e.model_id, e.dimension_means);
        row.push(Cell::Unit(e.score));
        t.push(row);
    }
    t
}

pub fn scores_table(scored: &ScoredCorpus) -> Table {
    let mut t = Table::new(vec![
        "prompt",
        "model",
        "judge",
        "bias",
        "fairness",
        "ethics",
        "epistemic",
        "coverage",
        "intensity",
        "base_bias",
        "amplification",
    ]);
    for (q, prompt) in scored.prompts().iter().enumerate() {
        for (m, model) in scored.models().iter().enumerate() {
            for (j, judge) in scored.judges().iter().enumerate() {
                let Some(v) = scored.vector(m, q, j) else {
                    continue;
                };
                t.push(vec![
                    Cell::Str(prompt.clone()),
                    Cell::Str(model.clone()),
                    Cell::Str(judge.clone()),
                    Cell::Unit(v.bias),
                    Cell::Unit(v.fairness),
                    Cell::Unit(v.ethics),
                    Cell::Unit(v.epistemic),
                    Cell::Unit(v.bias_parts.coverage),
                    Cell::Unit(v.bias_parts.intensity),
                    Cell::Unit(v.bias_parts.base),
                    Cell::Unit(v.bias_parts.amplification),
                ]);
            }
        }
    }
    t
}

pub fn harm_table(harm: &HarmField, risk: &RiskField) -> Table {
    let mut t = Table::new(vec![
        "prompt",
        "model",
        "bias",
        "fairness",
        "ethics",
        "epistemic",
        "radius",
        "any_harm",
        "residual_safety",
        "log_bias",
        "log_fairness",
        "log_ethics",
        "log_epistemic",
        "cumulative_log_risk",
    ]);
    for (q, prompt) in harm.prompts().iter().enumerate() {
        for (m, model) in harm.models().iter().enumerate() {
            let (Some(h), Some(cell)) = (harm.vector(m, q), risk.cell(m, q)) else {
                continue;
            };
            let mut row = vec![Cell::Str(prompt.clone()), Cell::Str(model.clone())];
            row.extend(h.as_array().into_iter().map(Cell::Unit));
            row.push(Cell::Unit(cell.radius));
            row.push(Cell::Unit(cell.any_harm));
            row.push(Cell::Unit(cell.residual_safety));
            row.extend(cell.log_risks.into_iter().map(Cell::Log));
            row.push(Cell::Log(cell.cumulative));
            t.push(row);
        }
    }
    t
}

pub fn bootstrap_ci_table(boot: &BootstrapResult) -> Table {
    let mut t = Table::new(vec!["model", "cvar_log_risk", "ci_lo", "ci_hi"]);
    for (m, model) in boot.models.iter().enumerate() {
        t.push(vec![
            Cell::Str(model.clone()),
            Cell::Log(boot.point[m]),
            Cell::Log(boot.lo[m]),
            Cell::Log(boot.hi[m]),
        ]);
    }
    t
}

pub fn delta_cvar_table(boot: &BootstrapResult) -> Table {
    let mut t = Table::new(vec![
        "model_a",
        "model_b",
        "delta",
        "ci_lo",
        "ci_hi",
        "separable",
    ]);
    for pair in &boot.pairwise {
        t.push(vec![
            Cell::Str(pair.model_a.clone()),
            Cell::Str(pair.model_b.clone()),
            Cell::Log(pair.delta),
            Cell::Log(pair.lo),
            Cell::Log(pair.hi),
            Cell::Bool(pair.separable),
        ]);
    }
    t
}

pub fn friedman_table(result: &FriedmanResult) -> Table {
    let mut t = Table::new(vec![
        "statistic",
        "df",
        "p_value",
        "kendall_w",
        "n",
        "k",
        "degenerate",
    ]);
    t.push(vec![
        Cell::Unit(result.statistic),
        Cell::Count(result.df),
        Cell::P(result.p_value),
        Cell::Unit(result.kendall_w),
        Cell::Count(result.n),
        Cell::Count(result.k),
        Cell::Bool(result.degenerate),
    ]);
    t
}

pub fn wilcoxon_table(rows: &[WilcoxonRow]) -> Table {
    let mut t = Table::new(vec![
        "model_a",
        "model_b",
        "n_effective",
        "statistic",
        "p_value",
        "adjusted_p",
        "reject",
        "exact",
    ]);
    for row in rows {
        t.push(vec![
            Cell::Str(row.model_a.clone()),
            Cell::Str(row.model_b.clone()),
            Cell::Count(row.result.n_effective),
            Cell::Unit(row.result.statistic),
            Cell::P(row.result.p_value),
            Cell::P(row.adjusted_p),
            Cell::Bool(row.reject),
            Cell::Bool(row.result.exact),
        ]);
    }
    t
}

pub fn eta2_table(anova: &VarianceDecomposition) -> Table {
    let mut t = Table::new(vec![
        "ss_total",
        "ss_model",
        "ss_prompt",
        "ss_residual",
        "eta2_model",
        "eta2_prompt",
        "eta2_residual",
        "partial_eta2_model",
        "partial_eta2_prompt",
        "degenerate",
    ]);
    t.push(vec![
        Cell::Unit(anova.ss_total),
        Cell::Unit(anova.ss_model),
        Cell::Unit(anova.ss_prompt),
        Cell::Unit(anova.ss_residual),
        Cell::Unit(anova.eta2_model),
        Cell::Unit(anova.eta2_prompt),
        Cell::Unit(anova.eta2_residual),
        Cell::Unit(anova.partial_eta2_model),
        Cell::Unit(anova.partial_eta2_prompt),
        Cell::Bool(anova.degenerate),
    ]);
    t
}

/// (values, agreement, spread) tables for one sweep.
pub fn sweep_tables(sweep: &SweepReport) -> (Table, Table, Table) {
    let mut values = Table::new(vec![sweep.parameter, "model", "cvar_log_risk"]);
    for (g, &point) in sweep.grid.iter().enumerate() {
        for (m, model) in sweep.models.iter().enumerate() {
            values.push(vec![
                Cell::Unit(point),
                Cell::Str(model.clone()),
                Cell::Log(sweep.statistics[g][m]),
            ]);
        }
    }
    let mut agreement = Table::new(vec![sweep.parameter, "tau_b", "rho"]);
    for (g, corr) in sweep.rank_corr.iter().enumerate() {
        agreement.push(vec![
            Cell::Unit(sweep.grid[g]),
            Cell::Unit(corr.tau_b),
            Cell::Unit(corr.rho),
        ]);
    }
    let mut spread = Table::new(vec!["model", "max_spread"]);
    for (m, model) in sweep.models.iter().enumerate() {
        spread.push(vec![
            Cell::Str(model.clone()),
            Cell::Log(sweep.max_spread[m]),
        ]);
    }
    (values, agreement, spread)
}

/// (ordering, per-model CVaR) tables for the leave-one-judge-out scan.
pub fn lojo_tables(entries: &[LojoEntry], models: &[String]) -> (Table, Table) {
    let mut ordering = Table::new(vec!["omitted_judge", "k_models", "tau_b", "p_value"]);
    let mut cvars = Table::new(vec!["omitted_judge", "model", "cvar_log_risk"]);
    for e in entries {
        ordering.push(vec![
            Cell::Str(e.omitted_judge.clone()),
            Cell::Count(e.k_models),
            Cell::Unit(e.tau_b),
            Cell::P(e.p_value),
        ]);
        for (m, model) in models.iter().enumerate() {
            cvars.push(vec![
                Cell::Str(e.omitted_judge.clone()),
                Cell::Str(model.clone()),
                Cell::Log(e.cvars[m]),
            ]);
        }
    }
    (ordering, cvars)
}

pub fn mad_table(summaries: &[MadSummary]) -> Table {
    let mut t = Table::new(vec!["dimension", "mean", "std", "items", "skipped"]);
    for s in summaries {
        t.push(vec![
            Cell::Str(s.dimension.to_string()),
            Cell::Unit(s.mean),
            Cell::Unit(s.std),
            Cell::Count(s.items),
            Cell::Count(s.skipped),
        ]);
    }
    t
}

pub fn concordance_table(summaries: &[sharp_core::ConcordanceSummary]) -> Table {
    let mut t = Table::new(vec![
        "dimension",
        "judge_a",
        "judge_b",
        "models",
        "skipped",
        "mean_tau",
        "median_tau",
        "std_tau",
    ]);
    for s in summaries {
        t.push(vec![
            Cell::Str(s.dimension.to_string()),
            Cell::Str(s.judge_a.clone()),
            Cell::Str(s.judge_b.clone()),
            Cell::Count(s.models),
            Cell::Count(s.skipped),
            Cell::Unit(s.mean_tau),
            Cell::Unit(s.median_tau),
            Cell::Unit(s.std_tau),
        ]);
    }
    t
}

pub fn dependence_table(report: &DependenceReport) -> Table {
    let mut t = Table::new(vec![
        "model",
        "mean_rho_all",
        "mean_rho_tail",
        "tail_size",
        "undefined_all",
        "undefined_tail",
        "tail_below_all",
    ]);
    for r in &report.rows {
        t.push(vec![
            Cell::Str(r.model_id.clone()),
            Cell::Unit(r.mean_rho_all),
            Cell::Unit(r.mean_rho_tail),
            Cell::Count(r.tail_size),
            Cell::Count(r.undefined_all),
            Cell::Count(r.undefined_tail),
            Cell::Bool(r.tail_below_all),
        ]);
    }
    t
}

pub fn baselines_table(report: &BaselineReport) -> Table {
    let mut t = Table::new(vec![
        "model",
        "mean_log_risk",
        "cvar_log_risk",
        "cvar_radius",
        "cvar_max_subindex",
        "mean_any_harm",
    ]);
    for r in &report.rows {
        t.push(vec![
            Cell::Str(r.model_id.clone()),
            Cell::Log(r.mean_log_risk),
            Cell::Log(r.cvar_log_risk),
            Cell::Unit(r.cvar_radius),
            Cell::Unit(r.cvar_max_subindex),
            Cell::Unit(r.mean_any_harm),
        ]);
    }
    t
}

pub fn baseline_corr_table(report: &BaselineReport) -> Table {
    let mut t = Table::new(vec![
        "metric_a",
        "metric_b",
        "rho",
        "rho_p",
        "tau_b",
        "degenerate",
    ]);
    for c in &report.correlations {
        t.push(vec![
            Cell::Str(c.metric_a.to_string()),
            Cell::Str(c.metric_b.to_string()),
            Cell::Unit(c.rho),
            Cell::P(c.rho_p),
            Cell::Unit(c.tau_b),
            Cell::Bool(c.degenerate),
        ]);
    }
    t
}

pub fn flips_table(report: &BaselineReport) -> Table {
    let mut t = Table::new(vec![
        "model_a",
        "model_b",
        "kind",
        "mean_a",
        "mean_b",
        "cvar_a",
        "cvar_b",
    ]);
    for f in &report.flips {
        t.push(vec![
            Cell::Str(f.model_a.clone()),
            Cell::Str(f.model_b.clone()),
            Cell::Str(f.kind.as_str().to_string()),
            Cell::Log(f.mean_a),
            Cell::Log(f.mean_b),
            Cell::Log(f.cvar_a),
            Cell::Log(f.cvar_b),
        ]);
    }
    t
}

fn metric_cell(metric: &str, x: f64) -> Cell {
    if metric == "cumulative_log_risk" {
        Cell::Log(x)
    } else {
        Cell::Unit(x)
    }
}

pub fn plot_quantiles_table(records: &[PlotRecord]) -> Table {
    let mut t = Table::new(vec![
        "model",
        "metric",
        "n",
        "min",
        "p2_5",
        "p25",
        "p50",
        "p75",
        "p97_5",
        "max",
    ]);
    for r in records {
        let q = &r.quantiles;
        let mut row = vec![
            Cell::Str(r.model_id.clone()),
            Cell::Str(r.metric.to_string()),
            Cell::Count(r.n),
        ];
        for v in [q.min, q.p2_5, q.p25, q.p50, q.p75, q.p97_5, q.max] {
            row.push(metric_cell(r.metric, v));
        }
        t.push(row);
    }
    t
}

pub fn plot_histograms_table(records: &[PlotRecord]) -> Table {
    let mut t = Table::new(vec!["model", "metric", "bin", "lo", "hi", "count"]);
    for r in records {
        let h = &r.histogram;
        for (bin, &count) in h.counts.iter().enumerate() {
            t.push(vec![
                Cell::Str(r.model_id.clone()),
                Cell::Str(r.metric.to_string()),
                Cell::Count(bin),
                metric_cell(r.metric, h.edges[bin]),
                metric_cell(r.metric, h.edges[bin + 1]),
                Cell::Count(count as usize),
            ]);
        }
    }
    t
}
