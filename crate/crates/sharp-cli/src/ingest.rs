//! JSON Lines corpus ingestion and emission.
//!
//! One record per line, snake_case keys mirroring [`JudgeAssessment`];
//! `bias_flags` is a nested name -> bool map. Parse diagnostics carry
//! 1-based line numbers. Unknown top-level keys are errors in strict
//! mode and collected warnings in partial mode.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;
use sharp_core::{
    CompletenessMode, Corpus, CorpusError, Explicitness, JudgeAssessment, ScoreScale,
};

/// Top-level wire keys, in schema order.
const KNOWN_KEYS: [&str; 18] = [
    "prompt_id",
    "model_id",
    "judge_id",
    "bias_flags",
    "bias_severity",
    "bias_impact",
    "explicitness",
    "intersectionality",
    "fairness_f1",
    "fairness_f2",
    "fairness_f3",
    "ethics_g1",
    "ethics_g2",
    "ethics_g3",
    "ethics_g4",
    "ethics_g5",
    "epistemic_k1",
    "epistemic_k2",
];

/// Parsed corpus plus the non-fatal notices collected on the way.
#[derive(Debug)]
pub struct ParsedCorpus {
    pub corpus: Corpus,
    /// "line N: ..." notices; only partial mode produces any.
    pub warnings: Vec<String>,
}

/// Reads a JSONL file into a validated corpus.
pub fn parse_corpus(
    path: &Path,
    categories: &[String],
    scale: ScoreScale,
    mode: CompletenessMode,
) -> Result<ParsedCorpus, IngestError> {
    let file = File::open(path).map_err(|e| IngestError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_reader(BufReader::new(file), categories, scale, mode)
}

/// Reads JSONL records from any buffered source.
pub fn parse_reader<R: BufRead>(
    reader: R,
    categories: &[String],
    scale: ScoreScale,
    mode: CompletenessMode,
) -> Result<ParsedCorpus, IngestError> {
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: BTreeMap<(String, String, String), usize> = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| IngestError::Io {
            path: format!("line {line_no}"),
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_record(line_no, &line, categories, scale, mode, &mut warnings)?;
        let triple = (
            rec.prompt_id.clone(),
            rec.model_id.clone(),
            rec.judge_id.clone(),
        );
        if let Some(&first) = seen.get(&triple) {
            return Err(IngestError::DuplicateTriple {
                line: line_no,
                first,
                prompt_id: triple.0,
                model_id: triple.1,
                judge_id: triple.2,
            });
        }
        seen.insert(triple, line_no);
        records.push(rec);
    }
    let corpus = Corpus::build(records, categories.to_vec(), scale, mode)
        .map_err(IngestError::Corpus)?;
    Ok(ParsedCorpus { corpus, warnings })
}

fn parse_record(
    line_no: usize,
    line: &str,
    categories: &[String],
    scale: ScoreScale,
    mode: CompletenessMode,
    warnings: &mut Vec<String>,
) -> Result<JudgeAssessment, IngestError> {
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| IngestError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
    let obj = value.as_object().ok_or(IngestError::Malformed {
        line: line_no,
        message: String::from("record is not a JSON object"),
    })?;

    for key in obj.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            match mode {
                CompletenessMode::Strict => {
                    return Err(IngestError::UnknownKey {
                        line: line_no,
                        key: key.clone(),
                    })
                }
                CompletenessMode::Partial => {
                    warnings.push(format!("line {line_no}: ignoring unknown key `{key}`"));
                }
            }
        }
    }

    let get = |key: &'static str| -> Result<&serde_json::Value, IngestError> {
        obj.get(key)
            .ok_or(IngestError::MissingKey { line: line_no, key })
    };
    let get_str = |key: &'static str| -> Result<String, IngestError> {
        get(key)?
            .as_str()
            .map(String::from)
            .ok_or(IngestError::WrongType {
                line: line_no,
                key,
                expected: "string",
            })
    };
    let get_num = |key: &'static str| -> Result<f64, IngestError> {
        get(key)?.as_f64().ok_or(IngestError::WrongType {
            line: line_no,
            key,
            expected: "number",
        })
    };
    let get_bool = |key: &'static str| -> Result<bool, IngestError> {
        get(key)?.as_bool().ok_or(IngestError::WrongType {
            line: line_no,
            key,
            expected: "boolean",
        })
    };

    let mut bias_flags = BTreeMap::new();
    let flags = get("bias_flags")?
        .as_object()
        .ok_or(IngestError::WrongType {
            line: line_no,
            key: "bias_flags",
            expected: "object of booleans",
        })?;
    for (name, flag) in flags {
        let flag = flag.as_bool().ok_or(IngestError::WrongType {
            line: line_no,
            key: "bias_flags",
            expected: "object of booleans",
        })?;
        bias_flags.insert(name.clone(), flag);
    }

    let explicitness = match get_str("explicitness")?.as_str() {
        "none" => Explicitness::None,
        "implicit" => Explicitness::Implicit,
        "explicit" => Explicitness::Explicit,
        other => {
            return Err(IngestError::BadExplicitness {
                line: line_no,
                value: String::from(other),
            })
        }
    };

    let rec = JudgeAssessment {
        prompt_id: get_str("prompt_id")?,
        model_id: get_str("model_id")?,
        judge_id: get_str("judge_id")?,
        bias_flags,
        bias_severity: get_num("bias_severity")?,
        bias_impact: get_num("bias_impact")?,
        explicitness,
        intersectionality: get_bool("intersectionality")?,
        fairness: [
            get_num("fairness_f1")?,
            get_num("fairness_f2")?,
            get_num("fairness_f3")?,
        ],
        ethics: [
            get_num("ethics_g1")?,
            get_num("ethics_g2")?,
            get_num("ethics_g3")?,
            get_num("ethics_g4")?,
            get_num("ethics_g5")?,
        ],
        epistemic: [get_num("epistemic_k1")?, get_num("epistemic_k2")?],
    };
    rec.validate(categories, scale)
        .map_err(|source| IngestError::Record {
            line: line_no,
            source,
        })?;
    Ok(rec)
}

/// Raw score on the wire: integral under the ordinal scale, float
/// otherwise. Keeps ordinal fixtures free of ".0" noise.
#[derive(Serialize)]
#[serde(untagged)]
enum WireScore {
    Ordinal(u8),
    Unit(f64),
}

fn wire_score(raw: f64, scale: ScoreScale) -> WireScore {
    match scale {
        ScoreScale::Ordinal => WireScore::Ordinal(raw as u8),
        ScoreScale::Unit => WireScore::Unit(raw),
    }
}

/// Wire form of one record; field order fixes the emitted key order.
#[derive(Serialize)]
struct WireRecord<'a> {
    prompt_id: &'a str,
    model_id: &'a str,
    judge_id: &'a str,
    bias_flags: &'a BTreeMap<String, bool>,
    bias_severity: WireScore,
    bias_impact: WireScore,
    explicitness: &'a str,
    intersectionality: bool,
    fairness_f1: WireScore,
    fairness_f2: WireScore,
    fairness_f3: WireScore,
    ethics_g1: WireScore,
    ethics_g2: WireScore,
    ethics_g3: WireScore,
    ethics_g4: WireScore,
    ethics_g5: WireScore,
    epistemic_k1: WireScore,
    epistemic_k2: WireScore,
}

/// One record as a JSONL line, without the trailing newline.
pub fn record_line(rec: &JudgeAssessment, scale: ScoreScale) -> String {
    let s = |raw: f64| wire_score(raw, scale);
    let wire = WireRecord {
        prompt_id: &rec.prompt_id,
        model_id: &rec.model_id,
        judge_id: &rec.judge_id,
        bias_flags: &rec.bias_flags,
        bias_severity: s(rec.bias_severity),
        bias_impact: s(rec.bias_impact),
        explicitness: rec.explicitness.as_str(),
        intersectionality: rec.intersectionality,
        fairness_f1: s(rec.fairness[0]),
        fairness_f2: s(rec.fairness[1]),
        fairness_f3: s(rec.fairness[2]),
        ethics_g1: s(rec.ethics[0]),
        ethics_g2: s(rec.ethics[1]),
        ethics_g3: s(rec.ethics[2]),
        ethics_g4: s(rec.ethics[3]),
        ethics_g5: s(rec.ethics[4]),
        epistemic_k1: s(rec.epistemic[0]),
        epistemic_k2: s(rec.epistemic[1]),
    };
    serde_json::to_string(&wire).expect("wire record serializes")
}

/// Writes the corpus as JSONL in dense (model, prompt, judge) index
/// order, so the byte stream is a pure function of the corpus contents.
pub fn emit_corpus<W: Write>(corpus: &Corpus, mut out: W) -> io::Result<()> {
    for m in 0..corpus.k() {
        for q in 0..corpus.n() {
            for j in 0..corpus.judge_count() {
                if let Some(rec) = corpus.record(m, q, j) {
                    out.write_all(record_line(rec, corpus.scale()).as_bytes())?;
                    out.write_all(b"\n")?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug)]
pub enum IngestError {
    Io {
        path: String,
        message: String,
    },
    Malformed {
        line: usize,
        message: String,
    },
    MissingKey {
        line: usize,
        key: &'static str,
    },
    WrongType {
        line: usize,
        key: &'static str,
        expected: &'static str,
    },
    UnknownKey {
        line: usize,
        key: String,
    },
    BadExplicitness {
        line: usize,
        value: String,
    },
    Record {
        line: usize,
        source: CorpusError,
    },
    DuplicateTriple {
        line: usize,
        first: usize,
        prompt_id: String,
        model_id: String,
        judge_id: String,
    },
    Corpus(CorpusError),
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            IngestError::Malformed { line, message } => {
                write!(f, "line {line}: malformed record: {message}")
            }
            IngestError::MissingKey { line, key } => {
                write!(f, "line {line}: missing key `{key}`")
            }
            IngestError::WrongType {
                line,
                key,
                expected,
            } => write!(f, "line {line}: `{key}` must be a {expected}"),
            IngestError::UnknownKey { line, key } => {
                write!(f, "line {line}: unknown key `{key}`")
            }
            IngestError::BadExplicitness { line, value } => write!(
                f,
                "line {line}: explicitness must be none, implicit, or explicit, got `{value}`"
            ),
            IngestError::Record { line, source } => write!(f, "line {line}: {source}"),
            IngestError::DuplicateTriple {
                line,
                first,
                prompt_id,
                model_id,
                judge_id,
            } => write!(
                f,
                "line {line}: duplicate record for (prompt `{prompt_id}`, model `{model_id}`, \
                 judge `{judge_id}`), first seen on line {first}"
            ),
            IngestError::Corpus(source) => source.fmt(f),
        }
    }
}

impl std::error::Error for IngestError {}
