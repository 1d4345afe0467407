//! Seeded synthetic corpus generation.
//!
//! Each (model, prompt, dimension) gets a latent intensity drawn from the
//! model's Beta law; each judge sees an independently noise-jittered copy
//! of the latent per raw field, rounded onto the wire schema (ordinals
//! 1..10, flags and intersectionality by thresholding at 1/2,
//! explicitness by thirds). All draws come from one ChaCha8 stream in a
//! fixed order, so the corpus is a pure function of the spec.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Beta, Distribution, Normal};
use sharp_core::{
    CompletenessMode, Corpus, CorpusError, Explicitness, JudgeAssessment, ScoreScale,
    DEFAULT_CATEGORIES,
};

/// Beta(a, b) intensity laws for one model, in (bias, fairness, ethics,
/// epistemic) order.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelLaw {
    pub model_id: String,
    pub beta: [(f64, f64); 4],
}

/// Full recipe for a synthetic corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub models: Vec<ModelLaw>,
    pub prompts: usize,
    pub judges: usize,
    /// Standard deviation of the per-field judge jitter.
    pub noise: f64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.models.is_empty() {
            return Err(SynthError::NoModels);
        }
        if self.prompts == 0 || self.judges == 0 {
            return Err(SynthError::ZeroCount);
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(SynthError::BadNoise { noise: self.noise });
        }
        let mut ids: Vec<&str> = self.models.iter().map(|m| m.model_id.as_str()).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(SynthError::DuplicateModel);
        }
        for law in &self.models {
            for &(a, b) in &law.beta {
                if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
                    return Err(SynthError::BadBeta {
                        model_id: law.model_id.clone(),
                        a,
                        b,
                    });
                }
            }
        }
        Ok(())
    }

    /// Spec with `count` models whose Beta means step evenly from
    /// `mean_lo` to `mean_hi` at the given concentration (a + b), the
    /// same law on all four dimensions. Ids are zero-padded so the
    /// lexicographic corpus order matches the generation order.
    #[allow(clippy::too_many_arguments)]
    pub fn spread(
        seed: u64,
        count: usize,
        prompts: usize,
        judges: usize,
        noise: f64,
        mean_lo: f64,
        mean_hi: f64,
        concentration: f64,
    ) -> Result<SynthSpec, SynthError> {
        if !(mean_lo > 0.0 && mean_hi < 1.0 && mean_lo <= mean_hi) {
            return Err(SynthError::BadMeanRange { mean_lo, mean_hi });
        }
        if !(concentration > 0.0 && concentration.is_finite()) {
            return Err(SynthError::BadConcentration { concentration });
        }
        if count == 0 {
            return Err(SynthError::NoModels);
        }
        let models = (0..count)
            .map(|i| {
                let t = if count == 1 {
                    0.5
                } else {
                    i as f64 / (count - 1) as f64
                };
                let mean = mean_lo + (mean_hi - mean_lo) * t;
                let law = (mean * concentration, (1.0 - mean) * concentration);
                ModelLaw {
                    model_id: format!("m{i:03}"),
                    beta: [law; 4],
                }
            })
            .collect();
        let spec = SynthSpec {
            seed,
            models,
            prompts,
            judges,
            noise,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn ordinal(v: f64) -> f64 {
    1.0 + (9.0 * v).round()
}

fn explicitness(v: f64) -> Explicitness {
    if v < 1.0 / 3.0 {
        Explicitness::None
    } else if v < 2.0 / 3.0 {
        Explicitness::Implicit
    } else {
        Explicitness::Explicit
    }
}

/// Generates the corpus described by the spec (strict, ordinal scale,
/// default category set). Deterministic given the seed.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<Corpus, SynthError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.noise).expect("validated noise scale");
    let jitter = |rng: &mut ChaCha8Rng, latent: f64| -> f64 {
        (latent + noise.sample(rng)).clamp(0.0, 1.0)
    };

    let mut records = Vec::with_capacity(spec.models.len() * spec.prompts * spec.judges);
    for law in &spec.models {
        let laws: Vec<Beta<f64>> = law
            .beta
            .iter()
            .map(|&(a, b)| Beta::new(a, b).expect("validated Beta parameters"))
            .collect();
        for q in 0..spec.prompts {
            let latent: Vec<f64> = laws.iter().map(|d| d.sample(&mut rng)).collect();
            let (yb, yf, ye, yk) = (latent[0], latent[1], latent[2], latent[3]);
            for j in 0..spec.judges {
                let bias_flags = DEFAULT_CATEGORIES
                    .iter()
                    .map(|c| (c.to_string(), jitter(&mut rng, yb) > 0.5))
                    .collect();
                records.push(JudgeAssessment {
                    prompt_id: format!("p{q:04}"),
                    model_id: law.model_id.clone(),
                    judge_id: format!("j{j:02}"),
                    bias_flags,
                    bias_severity: ordinal(jitter(&mut rng, yb)),
                    bias_impact: ordinal(jitter(&mut rng, yb)),
                    explicitness: explicitness(jitter(&mut rng, yb)),
                    intersectionality: jitter(&mut rng, yb) > 0.5,
                    fairness: [0; 3].map(|_| ordinal(jitter(&mut rng, yf))),
                    ethics: [0; 5].map(|_| ordinal(jitter(&mut rng, ye))),
                    epistemic: [0; 2].map(|_| ordinal(jitter(&mut rng, yk))),
                });
            }
        }
    }
    let categories = DEFAULT_CATEGORIES.iter().map(|c| c.to_string()).collect();
    Corpus::build(
        records,
        categories,
        ScoreScale::Ordinal,
        CompletenessMode::Strict,
    )
    .map_err(SynthError::Corpus)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SynthError {
    NoModels,
    ZeroCount,
    DuplicateModel,
    BadNoise { noise: f64 },
    BadBeta { model_id: String, a: f64, b: f64 },
    BadMeanRange { mean_lo: f64, mean_hi: f64 },
    BadConcentration { concentration: f64 },
    Corpus(CorpusError),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::NoModels => write!(f, "need at least one model law"),
            SynthError::ZeroCount => write!(f, "prompt and judge counts must be at least 1"),
            SynthError::DuplicateModel => write!(f, "model ids must be unique"),
            SynthError::BadNoise { noise } => {
                write!(f, "noise scale must be finite and >= 0, got {noise}")
            }
            SynthError::BadBeta { model_id, a, b } => {
                write!(f, "Beta parameters must be > 0: model `{model_id}` has ({a}, {b})")
            }
            SynthError::BadMeanRange { mean_lo, mean_hi } => {
                write!(f, "need 0 < mean_lo <= mean_hi < 1, got [{mean_lo}, {mean_hi}]")
            }
            SynthError::BadConcentration { concentration } => {
                write!(f, "concentration must be > 0, got {concentration}")
            }
            SynthError::Corpus(source) => source.fmt(f),
        }
    }
}

impl std::error::Error for SynthError {}
