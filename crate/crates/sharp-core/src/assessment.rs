//! Assessment record schema, validation, and score normalization.
//!
//! A corpus is a collection of per-judge structured assessments, one record
//! per (prompt, model, judge) triple. Raw scores arrive either as ordinals
//! on 1..10 or, with [`ScoreScale::Unit`], as floats already in [0, 1].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Default bias category set; overridable per corpus.
pub const DEFAULT_CATEGORIES: [&str; 7] = [
    "gender",
    "race",
    "ethnicity",
    "disability",
    "age",
    "religion",
    "geographic_origin",
];

/// How strongly a harmful statement is voiced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Explicitness {
    None,
    Implicit,
    Explicit,
}

impl Explicitness {
    pub fn as_str(self) -> &'static str {
        match self {
            Explicitness::None => "none",
            Explicitness::Implicit => "implicit",
            Explicitness::Explicit => "explicit",
        }
    }
}

/// Scale of the raw score fields in a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreScale {
    /// Integral ordinals in 1..10, normalized via [`norm_ordinal`].
    Ordinal,
    /// Floats already in [0, 1], taken as-is.
    Unit,
}

/// Whether every (prompt, model, judge) triple must be present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletenessMode {
    Strict,
    Partial,
}

/// Maps an ordinal in 1..10 onto [0, 1], minimum to 0 and maximum to 1.
pub fn norm_ordinal(x: u8) -> Result<f64, CorpusError> {
    if !(1..=10).contains(&x) {
        return Err(CorpusError::OrdinalOutOfRange {
            field: "value",
            value: x as f64,
        });
    }
    Ok((x as f64 - 1.0) / 9.0)
}

/// Boolean indicator as a unit-interval value.
pub fn norm_bool(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Explicitness as a unit-interval value with monotone escalation.
pub fn norm_explicitness(e: Explicitness) -> f64 {
    match e {
        Explicitness::None => 0.0,
        Explicitness::Implicit => 0.5,
        Explicitness::Explicit => 1.0,
    }
}

/// One judge's structured assessment of one (prompt, model) response.
///
/// Score fields hold raw values on the corpus scale: integral 1..10 under
/// [`ScoreScale::Ordinal`], floats in [0, 1] under [`ScoreScale::Unit`].
#[derive(Clone, Debug, PartialEq)]
pub struct JudgeAssessment {
    pub prompt_id: String,
    pub model_id: String,
    pub judge_id: String,
    pub bias_flags: BTreeMap<String, bool>,
    pub bias_severity: f64,
    pub bias_impact: f64,
    pub explicitness: Explicitness,
    pub intersectionality: bool,
    pub fairness: [f64; 3],
    pub ethics: [f64; 5],
    pub epistemic: [f64; 2],
}

impl JudgeAssessment {
    /// Raw score fields with their wire names, in schema order.
    pub fn score_fields(&self) -> [(&'static str, f64); 12] {
        [
            ("bias_severity", self.bias_severity),
            ("bias_impact", self.bias_impact),
            ("fairness_f1", self.fairness[0]),
            ("fairness_f2", self.fairness[1]),
            ("fairness_f3", self.fairness[2]),
            ("ethics_g1", self.ethics[0]),
            ("ethics_g2", self.ethics[1]),
            ("ethics_g3", self.ethics[2]),
            ("ethics_g4", self.ethics[3]),
            ("ethics_g5", self.ethics[4]),
            ("epistemic_k1", self.epistemic[0]),
            ("epistemic_k2", self.epistemic[1]),
        ]
    }

    /// Checks score ranges against the scale and flag keys against the
    /// category set. [`Corpus::build`] runs this on every record; parsers
    /// can run it early to attach source locations to the error.
    pub fn validate(&self, categories: &[String], scale: ScoreScale) -> Result<(), CorpusError> {
        for (field, value) in self.score_fields() {
            match scale {
                ScoreScale::Ordinal => {
                    if crate::fmath::floor(value) != value || !(1.0..=10.0).contains(&value) {
                        return Err(CorpusError::OrdinalOutOfRange { field, value });
                    }
                }
                ScoreScale::Unit => {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(CorpusError::UnitScoreOutOfRange { field, value });
                    }
                }
            }
        }
        for key in self.bias_flags.keys() {
            if !categories.iter().any(|c| c == key) {
                return Err(CorpusError::UnknownCategory {
                    key: key.clone(),
                    prompt_id: self.prompt_id.clone(),
                });
            }
        }
        for cat in categories {
            if !self.bias_flags.contains_key(cat) {
                return Err(CorpusError::MissingCategory {
                    key: cat.clone(),
                    prompt_id: self.prompt_id.clone(),
                });
            }
        }
        Ok(())
    }

    /// Raw score on [0, 1] under the corpus scale.
    pub fn unit_score(raw: f64, scale: ScoreScale) -> f64 {
        match scale {
            ScoreScale::Ordinal => (raw - 1.0) / 9.0,
            ScoreScale::Unit => raw,
        }
    }
}

/// Validated assessment collection with a dense (model, prompt, judge) index.
///
/// Judge, model, and prompt id lists are sorted lexicographically; all
/// downstream output ordering derives from them.
#[derive(Clone, Debug)]
pub struct Corpus {
    judges: Vec<String>,
    models: Vec<String>,
    prompts: Vec<String>,
    categories: Vec<String>,
    scale: ScoreScale,
    mode: CompletenessMode,
    records: Vec<JudgeAssessment>,
    index: Vec<Option<u32>>,
}

impl Corpus {
    pub fn build(
        records: Vec<JudgeAssessment>,
        categories: Vec<String>,
        scale: ScoreScale,
        mode: CompletenessMode,
    ) -> Result<Self, CorpusError> {
        if records.is_empty() {
            return Err(CorpusError::EmptyRecords);
        }
        if categories.is_empty() {
            return Err(CorpusError::EmptyCategorySet);
        }
        let mut categories = categories;
        categories.sort();
        if categories.windows(2).any(|w| w[0] == w[1]) {
            let dup = categories
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0].clone())
                .unwrap_or_default();
            return Err(CorpusError::DuplicateCategory { name: dup });
        }

        let mut judges = Vec::new();
        let mut models = Vec::new();
        let mut prompts = Vec::new();
        for rec in &records {
            rec.validate(&categories, scale)?;
            insert_sorted(&mut judges, &rec.judge_id);
            insert_sorted(&mut models, &rec.model_id);
            insert_sorted(&mut prompts, &rec.prompt_id);
        }

        let (k, n, kj) = (models.len(), prompts.len(), judges.len());
        let mut index = alloc::vec![None; k * n * kj];
        for (pos, rec) in records.iter().enumerate() {
            let m = models.binary_search(&rec.model_id).expect("derived id");
            let q = prompts.binary_search(&rec.prompt_id).expect("derived id");
            let j = judges.binary_search(&rec.judge_id).expect("derived id");
            let cell = &mut index[(m * n + q) * kj + j];
            if cell.is_some() {
                return Err(CorpusError::DuplicateTriple {
                    prompt_id: rec.prompt_id.clone(),
                    model_id: rec.model_id.clone(),
                    judge_id: rec.judge_id.clone(),
                });
            }
            *cell = Some(pos as u32);
        }

        let corpus = Corpus {
            judges,
            models,
            prompts,
            categories,
            scale,
            mode,
            records,
            index,
        };
        if mode == CompletenessMode::Strict {
            let missing: Vec<_> = corpus.gaps().collect();
            if let Some(&(m, q, j)) = missing.first() {
                return Err(CorpusError::MissingTriple {
                    prompt_id: corpus.prompts[q].clone(),
                    model_id: corpus.models[m].clone(),
                    judge_id: corpus.judges[j].clone(),
                    total_missing: missing.len(),
                });
            }
        }
        Ok(corpus)
    }

    pub fn judges(&self) -> &[String] {
        &self.judges
    }

    pub fn models(&self) -> &[String] {
        &self.models
    }

    pub fn prompts(&self) -> &[String] {
        &self.prompts
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn scale(&self) -> ScoreScale {
        self.scale
    }

    pub fn mode(&self) -> CompletenessMode {
        self.mode
    }

    /// Prompt count n.
    pub fn n(&self) -> usize {
        self.prompts.len()
    }

    /// Model count k.
    pub fn k(&self) -> usize {
        self.models.len()
    }

    /// Judge panel size K.
    pub fn judge_count(&self) -> usize {
        self.judges.len()
    }

    pub fn records(&self) -> &[JudgeAssessment] {
        &self.records
    }

    /// Record for (model index, prompt index, judge index), if present.
    pub fn record(&self, model: usize, prompt: usize, judge: usize) -> Option<&JudgeAssessment> {
        let kj = self.judges.len();
        let n = self.prompts.len();
        self.index[(model * n + prompt) * kj + judge].map(|pos| &self.records[pos as usize])
    }

    /// Missing (model, prompt, judge) index triples, in index order.
    pub fn gaps(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.prompts.len();
        let kj = self.judges.len();
        self.index
            .iter()
            .enumerate()
            .filter(|(_, cell)| cell.is_none())
            .map(move |(i, _)| (i / (kj * n), (i / kj) % n, i % kj))
    }

    pub fn gap_count(&self) -> usize {
        self.index.iter().filter(|c| c.is_none()).count()
    }
}

fn insert_sorted(list: &mut Vec<String>, value: &str) {
    if let Err(pos) = list.binary_search_by(|x| x.as_str().cmp(value)) {
        list.insert(pos, String::from(value));
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CorpusError {
    EmptyRecords,
    EmptyCategorySet,
    DuplicateCategory {
        name: String,
    },
    OrdinalOutOfRange {
        field: &'static str,
        value: f64,
    },
    UnitScoreOutOfRange {
        field: &'static str,
        value: f64,
    },
    UnknownCategory {
        key: String,
        prompt_id: String,
    },
    MissingCategory {
        key: String,
        prompt_id: String,
    },
    DuplicateTriple {
        prompt_id: String,
        model_id: String,
        judge_id: String,
    },
    MissingTriple {
        prompt_id: String,
        model_id: String,
        judge_id: String,
        total_missing: usize,
    },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::EmptyRecords => write!(f, "corpus has no records"),
            CorpusError::EmptyCategorySet => write!(f, "bias category set is empty"),
            CorpusError::DuplicateCategory { name } => {
                write!(f, "duplicate bias category `{name}`")
            }
            CorpusError::OrdinalOutOfRange { field, value } => {
                write!(f, "ordinal out of range: {field} = {value}, expected integer in 1..10")
            }
            CorpusError::UnitScoreOutOfRange { field, value } => {
                write!(f, "score out of range: {field} = {value}, expected value in [0, 1]")
            }
            CorpusError::UnknownCategory { key, prompt_id } => {
                write!(f, "unknown bias category `{key}` (prompt `{prompt_id}`)")
            }
            CorpusError::MissingCategory { key, prompt_id } => {
                write!(f, "missing bias category `{key}` (prompt `{prompt_id}`)")
            }
            CorpusError::DuplicateTriple {
                prompt_id,
                model_id,
                judge_id,
            } => write!(
                f,
                "duplicate record for (prompt `{prompt_id}`, model `{model_id}`, judge `{judge_id}`)"
            ),
            CorpusError::MissingTriple {
                prompt_id,
                model_id,
                judge_id,
                total_missing,
            } => write!(
                f,
                "strict corpus is missing {total_missing} record(s), first gap: \
                 (prompt `{prompt_id}`, model `{model_id}`, judge `{judge_id}`)"
            ),
        }
    }
}

impl core::error::Error for CorpusError {}
