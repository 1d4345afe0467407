//! Acceptance battery: nine end-to-end criteria, one test each, every
//! test printing a single pass/fail line with its elapsed time.
//!
//! Criterion 1 checks internal identities of published reference figures
//! from the original 11-model evaluation run (901 prompts, proprietary
//! judge outputs; the raw data is not available here). Its final clause
//! is expected to fail: four of the published attribution rows do not
//! sum to 1 within the stated tolerance. The pipeline itself satisfies
//! the same identities exactly, which the earlier clauses demonstrate.

mod oracle;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use sha2::{Digest, Sha256};

use sharp_cli::pipeline::{bootstrap_cvar, run_pipeline};
use sharp_cli::synth::{generate_synthetic, SynthSpec};
use sharp_core::{
    alpha_sweep, any_harm, baseline_aggregates, cvar, friedman, holm_correct,
    kendall_tau_b_test, log_risk, lse, mad_dispersion, model_profile, paired_bootstrap,
    spearman_test, tail_attribution, tail_set, tau_sweep, var, variance_decomposition,
    wilcoxon_signed_rank, CompletenessMode, Corpus, Explicitness, FlipKind, JudgeAssessment,
    RiskMatrix, ScoreScale, DEFAULT_ALPHA_GRID, DEFAULT_CATEGORIES, DEFAULT_EPSILON, DEFAULT_TAU,
    DEFAULT_TAU_GRID, DEFAULT_THETA1, DEFAULT_THETA2,
};

const A_TOL: f64 = 1e-9;
const P_TOL: f64 = 1e-6;

fn assert_close(label: &str, got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "{label}: got {got}, want {want} (tol {tol})"
    );
}

fn u01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn finish(criterion: u32, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= limit,
        "criterion {criterion}: exceeded time budget ({elapsed:.2?} > {limit:.2?})"
    );
    println!("criterion {criterion}: PASS ({elapsed:.2?})");
}

#[allow(clippy::too_many_arguments)]
fn synthetic(
    seed: u64,
    models: usize,
    prompts: usize,
    judges: usize,
    noise: f64,
    mean_lo: f64,
    mean_hi: f64,
    concentration: f64,
) -> Corpus {
    let spec = SynthSpec::spread(
        seed,
        models,
        prompts,
        judges,
        noise,
        mean_lo,
        mean_hi,
        concentration,
    )
    .expect("synthetic spec");
    generate_synthetic(&spec).expect("synthetic corpus generation")
}

/// Complete unit-scale record with every score pinned to one level.
fn flat_record(model: &str, prompt: usize, judge: &str, level: f64) -> JudgeAssessment {
    JudgeAssessment {
        prompt_id: format!("p{prompt:03}"),
        model_id: model.to_string(),
        judge_id: judge.to_string(),
        bias_flags: DEFAULT_CATEGORIES
            .iter()
            .map(|c| (c.to_string(), false))
            .collect(),
        bias_severity: level,
        bias_impact: level,
        explicitness: Explicitness::None,
        intersectionality: false,
        fairness: [level; 3],
        ethics: [level; 5],
        epistemic: [level; 2],
    }
}

/// Published per-model tail attribution shares (bias, fairness, ethics,
/// epistemic) from the original evaluation run, three decimals each.
const REFERENCE_SHARE_ROWS: [(&str, [f64; 4]); 11] = [
    ("claude-sonnet-4-5", [0.301, 0.276, 0.202, 0.221]),
    ("gemini-1.5-pro", [0.254, 0.243, 0.195, 0.308]),
    ("claude-3-5-sonnet", [0.255, 0.229, 0.190, 0.327]),
    ("gemini-2.5-pro", [0.352, 0.264, 0.201, 0.184]),
    ("qwen3-235b", [0.357, 0.229, 0.182, 0.228]),
    ("gpt-4o", [0.275, 0.222, 0.187, 0.316]),
    ("gpt-oss-120b", [0.286, 0.250, 0.205, 0.260]),
    ("deepseek-chat", [0.339, 0.230, 0.196, 0.232]),
    ("mistral-large", [0.338, 0.230, 0.199, 0.231]),
    ("llama3-3-70b", [0.435, 0.200, 0.166, 0.188]),
    ("llama3-1-405b", [0.386, 0.223, 0.193, 0.185]),
];

/// Reference figures must satisfy the same identities the pipeline
/// guarantees by construction: W = chi2 / (n (k - 1)), partial eta2 =
/// eta2 / (eta2 + eta2_residual), attribution shares summing to 1.
#[test]
fn criterion_1_reference_figure_identities() {
    let started = Instant::now();

    // Published Friedman figures: chi2 = 1629.91 over n = 901, k = 11.
    assert_close("kendall W identity", 1629.91 / 9010.0, 0.1809, 1e-4);

    // Published eta2 rows against their own partial forms.
    assert_close("partial eta2 model", 0.1390 / (0.1390 + 0.6027), 0.1875, 5e-4);
    assert_close("partial eta2 prompt", 0.2583 / (0.2583 + 0.6027), 0.3001, 5e-4);

    // The computed pipeline satisfies the identities exactly: ground the
    // claim on a synthetic corpus of the same shape (11 models).
    let corpus = synthetic(1, 11, 150, 3, 0.05, 0.08, 0.6, 8.0);
    let pipe = run_pipeline(&corpus, DEFAULT_TAU, DEFAULT_EPSILON).expect("pipeline");
    let matrix = pipe.matrix().expect("matrix");
    let fr = friedman(&matrix).expect("friedman");
    assert!(!fr.degenerate);
    assert!(
        (fr.kendall_w * (fr.n as f64 * (fr.k as f64 - 1.0)) - fr.statistic).abs() <= A_TOL,
        "computed W identity violated"
    );
    let vd = variance_decomposition(&matrix).expect("variance decomposition");
    assert!(!vd.degenerate);
    assert_close(
        "computed partial eta2 model",
        vd.eta2_model / (vd.eta2_model + vd.eta2_residual),
        vd.partial_eta2_model,
        1e-12,
    );
    assert_close(
        "computed partial eta2 prompt",
        vd.eta2_prompt / (vd.eta2_prompt + vd.eta2_residual),
        vd.partial_eta2_prompt,
        1e-12,
    );
    for profile in pipe.profiles(0.95).expect("profiles") {
        let shares = profile.shares.expect("positive tail");
        let sum: f64 = shares.iter().sum();
        assert!(
            (sum - 1.0).abs() <= A_TOL,
            "computed shares for {} sum to {sum}",
            profile.model_id
        );
        let rounded: f64 = shares.iter().map(|s| (s * 1000.0).round() / 1000.0).sum();
        assert!(
            (rounded - 1.0).abs() <= 0.002 + A_TOL,
            "rounded shares for {} sum to {rounded}",
            profile.model_id
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed <= Duration::from_secs(1));

    // Published attribution rows under the same rounding tolerance: each
    // row of three-decimal shares must sum to 1 within 0.002 (the worst
    // case of four independent half-ulp roundings). The tiny slack keeps
    // a row sitting exactly at 0.002 from failing on float summation.
    let violations: Vec<(&str, f64)> = REFERENCE_SHARE_ROWS
        .iter()
        .filter_map(|(model, row)| {
            let sum: f64 = row.iter().sum();
            ((sum - 1.0).abs() > 0.002 + 1e-12).then_some((*model, sum))
        })
        .collect();
    if violations.is_empty() {
        println!("criterion 1: PASS ({elapsed:.2?})");
    } else {
        println!(
            "criterion 1: FAIL ({} of 11 reference rows violate the share-sum identity)",
            violations.len()
        );
        panic!(
            "reference attribution rows failing the identity the pipeline guarantees: {violations:?}"
        );
    }
}

/// The component log risks must sum to the cumulative, and the
/// cumulative must agree with the log risk of the compounded any-harm
/// probability under independence.
#[test]
fn criterion_2_compounding_identity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut accepted = 0usize;
    let mut worst = 0.0f64;
    while accepted < 10_000 {
        let h = [0.0; 4].map(|_| u01(&mut rng) * 0.999);
        let safety: f64 = h.iter().map(|&x| 1.0 - x).product();
        if safety < 0.05 {
            continue;
        }
        accepted += 1;
        let (components, cumulative) = log_risk(h, DEFAULT_EPSILON);
        let direct = -(1.0 - any_harm(h) + DEFAULT_EPSILON).ln();
        worst = worst.max((cumulative - direct).abs());
        let part_sum: f64 = components.iter().sum();
        assert_close("component sum", part_sum, cumulative, 1e-12);
    }
    assert!(
        worst <= 1e-4,
        "cumulative log risk drifts from compounded form: worst gap {worst}"
    );
    finish(2, started, Duration::from_secs(1));
}

/// Every published statistic must match an independent straight-line
/// recomputation on a moderate synthetic corpus.
#[test]
fn criterion_3_oracle_equivalence() {
    let started = Instant::now();
    let corpus = synthetic(11, 3, 200, 3, 0.05, 0.1, 0.6, 8.0);
    let pipe = run_pipeline(&corpus, DEFAULT_TAU, DEFAULT_EPSILON).expect("pipeline");
    let replay = oracle::replay(&corpus, DEFAULT_TAU, DEFAULT_EPSILON);
    let (k, n, kj) = (corpus.k(), corpus.n(), corpus.judge_count());

    for m in 0..k {
        for q in 0..n {
            for j in 0..kj {
                let got = pipe.scored.vector(m, q, j).expect("scored cell");
                let want = &replay.sub[m][q][j];
                assert_close("bias", got.bias, want.values[0], A_TOL);
                assert_close("fairness", got.fairness, want.values[1], A_TOL);
                assert_close("ethics", got.ethics, want.values[2], A_TOL);
                assert_close("epistemic", got.epistemic, want.values[3], A_TOL);
                assert_close("coverage", got.bias_parts.coverage, want.coverage, A_TOL);
                assert_close("intensity", got.bias_parts.intensity, want.intensity, A_TOL);
                assert_close("base", got.bias_parts.base, want.base, A_TOL);
                assert_close(
                    "amplification",
                    got.bias_parts.amplification,
                    want.amplification,
                    A_TOL,
                );
            }
            let hv = pipe.harm.vector(m, q).expect("harm cell");
            let cell = &replay.cells[m][q];
            for (d, (&got_h, &want_h)) in hv.as_array().iter().zip(&cell.h).enumerate() {
                assert_close(&format!("harm dim {d}"), got_h, want_h, A_TOL);
            }
            let rc = pipe.risk.cell(m, q).expect("risk cell");
            for d in 0..4 {
                assert_close(&format!("log risk dim {d}"), rc.log_risks[d], cell.l[d], A_TOL);
            }
            assert_close("cumulative", rc.cumulative, cell.cumulative, A_TOL);
            assert_close("any harm", rc.any_harm, cell.any, A_TOL);
            assert_close("radius", rc.radius, cell.radius, A_TOL);
        }
    }

    // Per-model profiles against the oracle, plus the raw tail helpers.
    let alpha = 0.95;
    let mut cvars = Vec::with_capacity(k);
    let mut mus = Vec::with_capacity(k);
    for m in 0..k {
        let got = model_profile(&pipe.risk, &pipe.harm, m, alpha).expect("profile");
        let want = oracle::profile(&replay.cells[m], alpha);
        assert_eq!(got.n_prompts, 200);
        assert_close("mu", got.mu_log_risk, want.mu, A_TOL);
        assert_close("sigma", got.sigma_log_risk, want.sigma, A_TOL);
        assert_close("var", got.var_log_risk, want.var, A_TOL);
        assert_close("cvar", got.cvar_log_risk, want.cvar, A_TOL);
        assert_close("mean any", got.mean_any_harm, want.mean_any, A_TOL);
        assert_close("cvar any", got.cvar_any_harm, want.cvar_any, A_TOL);
        assert_close("cvar radius", got.cvar_radius, want.cvar_radius, A_TOL);
        for d in 0..4 {
            assert_close("mean sub", got.mean_subindex[d], want.mean_subindex[d], A_TOL);
            assert_close("cvar sub", got.cvar_subindex[d], want.cvar_subindex[d], A_TOL);
        }
        let got_shares = got.shares.expect("shares");
        let want_shares = want.shares.expect("oracle shares");
        for d in 0..4 {
            assert_close("share", got_shares[d], want_shares[d], A_TOL);
        }

        let ls = pipe.risk.model_log_risks(m);
        assert_close("direct var", var(&ls, alpha).unwrap(), oracle::var_at(&ls, alpha), A_TOL);
        assert_close("direct cvar", cvar(&ls, alpha).unwrap(), oracle::cvar_at(&ls, alpha), A_TOL);
        assert_eq!(tail_set(&ls, alpha).unwrap(), oracle::tail_at(&ls, alpha));
        let comps = pipe.risk.model_log_components(m);
        let got_attr = tail_attribution(&comps, alpha).expect("attribution");
        let want_attr = oracle::shares(&comps, alpha).expect("oracle attribution");
        for d in 0..4 {
            assert_close("attribution", got_attr[d], want_attr[d], A_TOL);
        }
        cvars.push(got.cvar_log_risk);
        mus.push(got.mu_log_risk);
    }

    // Judge dispersion against the oracle, matched by dimension name.
    let want_mad = oracle::mad(&replay);
    for summary in mad_dispersion(&pipe.scored).expect("mad") {
        let d = match summary.dimension {
            "bias" => 0,
            "fairness" => 1,
            "ethics" => 2,
            "epistemic" => 3,
            other => panic!("unexpected dimension {other}"),
        };
        assert_eq!(summary.skipped, 0);
        assert_eq!(summary.items, want_mad[d].2);
        assert_close("mad mean", summary.mean, want_mad[d].0, A_TOL);
        assert_close("mad std", summary.std, want_mad[d].1, A_TOL);
    }

    // Rank statistics on the long per-prompt columns (ties expected in
    // principle, approximate path expected at n = 200).
    let cols: Vec<Vec<f64>> = (0..k).map(|m| pipe.risk.model_log_risks(m)).collect();
    for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let got = kendall_tau_b_test(&cols[a], &cols[b]).expect("tau");
        assert!(!got.exact);
        let want = oracle::kendall_approx(&cols[a], &cols[b]);
        assert_close("tau_b", got.coefficient, want.coefficient, A_TOL);
        assert_close("tau p", got.p_value, want.p_value, P_TOL);
        let got_rho = spearman_test(&cols[a], &cols[b]).expect("rho");
        let want_rho = oracle::spearman(&cols[a], &cols[b]);
        assert_close("rho", got_rho.coefficient, want_rho.coefficient, A_TOL);
        assert_close("rho p", got_rho.p_value, want_rho.p_value, P_TOL);
    }

    // Model-level n = 3 comparison exercises the exact tau tail.
    let got = kendall_tau_b_test(&cvars, &mus).expect("exact tau");
    assert!(got.exact);
    let want = oracle::kendall_exact_3(
        &[cvars[0], cvars[1], cvars[2]],
        &[mus[0], mus[1], mus[2]],
    );
    assert_close("exact tau_b", got.coefficient, want.coefficient, A_TOL);
    assert_close("exact tau p", got.p_value, want.p_value, P_TOL);
    let got_rho = spearman_test(&cvars, &mus).expect("rho n=3");
    let want_rho = oracle::spearman(&cvars, &mus);
    assert_close("rho n=3", got_rho.coefficient, want_rho.coefficient, A_TOL);
    assert_close("rho p n=3", got_rho.p_value, want_rho.p_value, P_TOL);

    // Friedman on the full matrix against the three-column oracle.
    let matrix = pipe.matrix().expect("matrix");
    let fr = friedman(&matrix).expect("friedman");
    assert_eq!(fr.df, 2);
    let rows: Vec<[f64; 3]> = (0..n)
        .map(|q| [matrix.value(q, 0), matrix.value(q, 1), matrix.value(q, 2)])
        .collect();
    let (stat, p, w, rank_sums) = oracle::friedman_3(&rows);
    assert_close("friedman stat", fr.statistic, stat, A_TOL);
    assert_close("friedman p", fr.p_value, p, P_TOL);
    assert_close("kendall w", fr.kendall_w, w, A_TOL);
    for (got_sum, want_sum) in fr.rank_sums.iter().zip(rank_sums) {
        assert_close("rank sum", *got_sum, want_sum, A_TOL);
    }

    // Moderate hand-checkable case: p away from both 0 and 1.
    let mut mod_values = Vec::new();
    for _ in 0..4 {
        mod_values.extend_from_slice(&[1.0, 2.0, 3.0]);
    }
    mod_values.extend_from_slice(&[2.0, 1.0, 3.0]);
    mod_values.extend_from_slice(&[3.0, 2.0, 1.0]);
    let prompts: Vec<String> = (0..6).map(|q| format!("p{q}")).collect();
    let mod_matrix = RiskMatrix::new(
        vec!["a".into(), "b".into(), "c".into()],
        prompts,
        mod_values.clone(),
    )
    .expect("matrix");
    let fr_mod = friedman(&mod_matrix).expect("friedman");
    let rows_mod: Vec<[f64; 3]> = (0..6)
        .map(|q| [mod_values[q * 3], mod_values[q * 3 + 1], mod_values[q * 3 + 2]])
        .collect();
    let (stat_mod, p_mod, _, _) = oracle::friedman_3(&rows_mod);
    assert_close("moderate stat", fr_mod.statistic, stat_mod, A_TOL);
    assert_close("moderate stat value", fr_mod.statistic, 52.0 / 12.0, A_TOL);
    assert_close("moderate p", fr_mod.p_value, p_mod, P_TOL);
    assert!(fr_mod.p_value > 0.05 && fr_mod.p_value < 0.5);

    // Wilcoxon: exact path on a short slice, approximate on a long one.
    let short_a = &cols[0][..16];
    let short_b = &cols[1][..16];
    let got_w = wilcoxon_signed_rank(short_a, short_b).expect("wilcoxon exact");
    assert!(got_w.exact);
    assert_eq!(got_w.n_effective, 16);
    let (stat_e, p_e) = oracle::wilcoxon_exact(short_a, short_b);
    assert_close("wilcoxon exact stat", got_w.statistic, stat_e, A_TOL);
    assert_close("wilcoxon exact p", got_w.p_value, p_e, P_TOL);

    let long_a = &cols[0][..100];
    let long_b = &cols[0][100..];
    let got_wa = wilcoxon_signed_rank(long_a, long_b).expect("wilcoxon approx");
    assert!(!got_wa.exact);
    assert_eq!(got_wa.n_effective, 100);
    let (stat_a, p_a) = oracle::wilcoxon_approx(long_a, long_b);
    assert_close("wilcoxon approx stat", got_wa.statistic, stat_a, A_TOL);
    assert_close("wilcoxon approx p", got_wa.p_value, p_a, P_TOL);
    assert!(got_wa.p_value > 1e-3);

    // Holm over the three pairwise Wilcoxon p values.
    let raw: Vec<f64> = [(0usize, 1usize), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| wilcoxon_signed_rank(&cols[a], &cols[b]).expect("pair").p_value)
        .collect();
    let got_holm = holm_correct(&raw, 0.05).expect("holm");
    let want_holm = oracle::holm(&raw, 0.05);
    for outcome in &got_holm {
        let (adj, rej) = want_holm[outcome.index];
        assert_close("holm adjusted", outcome.adjusted_p, adj, P_TOL);
        assert_eq!(outcome.reject, rej);
    }

    // Variance decomposition against the oracle on the same grid.
    let mut ovalues = Vec::with_capacity(n * k);
    for q in 0..n {
        for m in 0..k {
            ovalues.push(matrix.value(q, m));
        }
    }
    let vd = variance_decomposition(&matrix).expect("decomposition");
    assert!(!vd.degenerate);
    let want_vd = oracle::anova(&ovalues, n, k);
    assert_close("ss total", vd.ss_total, want_vd.ss_total, 1e-9);
    assert_close("ss model", vd.ss_model, want_vd.ss_model, 1e-9);
    assert_close("ss prompt", vd.ss_prompt, want_vd.ss_prompt, 1e-9);
    assert_close("ss residual", vd.ss_residual, want_vd.ss_residual, 1e-9);
    assert_close("eta2 model", vd.eta2_model, want_vd.eta2_model, A_TOL);
    assert_close("eta2 prompt", vd.eta2_prompt, want_vd.eta2_prompt, A_TOL);
    assert_close("eta2 residual", vd.eta2_residual, want_vd.eta2_residual, A_TOL);
    assert_close("partial model", vd.partial_eta2_model, want_vd.partial_model, A_TOL);
    assert_close("partial prompt", vd.partial_eta2_prompt, want_vd.partial_prompt, A_TOL);

    finish(3, started, Duration::from_secs(30));
}

/// Tail conventions: ceil(alpha n) order statistic, closed tail, and
/// monotone nondecreasing tail means in alpha.
#[test]
fn criterion_4_tail_conventions() {
    let started = Instant::now();

    let v20: Vec<f64> = (1..=20).map(|i| i as f64).collect();
    assert_eq!(var(&v20, 0.95).unwrap(), 19.0);
    assert_eq!(cvar(&v20, 0.95).unwrap(), 19.5);

    // The {1..20} case pins the ceil(alpha n) convention; under it the
    // 40-point grid follows. 0.90 * 40 is exactly 36 in binary, so the
    // alpha = 0.90 tail is {36..40}.
    let v40: Vec<f64> = (1..=40).map(|i| i as f64).collect();
    let expected = [38.0, 39.0, 39.5];
    for (alpha, want) in [0.90, 0.95, 0.975].iter().zip(expected) {
        assert_eq!(cvar(&v40, *alpha).unwrap(), want);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let len = 5 + (rng.next_u64() % 60) as usize;
        let sample: Vec<f64> = (0..len).map(|_| u01(&mut rng) * 10.0).collect();
        let mut prev = f64::NEG_INFINITY;
        for i in 1..40 {
            let alpha = i as f64 / 40.0;
            let c = cvar(&sample, alpha).unwrap();
            assert!(c >= prev, "tail mean decreased at alpha {alpha}");
            prev = c;
            assert_close("cvar vs oracle", c, oracle::cvar_at(&sample, alpha), 1e-12);
        }
    }

    finish(4, started, Duration::from_secs(1));
}

/// The ensemble must interpolate between mean and max as the
/// temperature moves, never leaving the [mean, max] envelope.
#[test]
fn criterion_5_lse_properties() {
    let started = Instant::now();
    let ens = |vals: &[f64], tau: f64| lse(vals, tau).expect("lse");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let vals = [0.0; 3].map(|_| u01(&mut rng));
        let mean = vals.iter().sum::<f64>() / 3.0;
        let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hot = ens(&vals, 0.01);
        let warm = ens(&vals, 0.2);
        let cold = ens(&vals, 100.0);
        for (label, v) in [("hot", hot), ("warm", warm), ("cold", cold)] {
            assert!(
                v >= mean - 1e-12 && v <= max + 1e-12,
                "{label} lse {v} outside [{mean}, {max}]"
            );
        }
        if max - min > 1e-9 {
            assert!(hot > warm && warm > cold, "temperature ordering violated");
        }
    }
    assert_close("pinned lse", ens(&[0.0, 0.0, 1.0], 0.2), 0.782955, 1e-6);
    let sharp = ens(&[0.0, 0.0, 1.0], 1e-3);
    assert!(sharp.is_finite() && (0.99..=1.0).contains(&sharp));
    finish(5, started, Duration::from_secs(1));
}

/// Bootstrap runs must be bit-identical across repeats and worker
/// counts, and identical columns must produce a degenerate zero delta.
#[test]
fn criterion_6_bootstrap_determinism_and_pairing() {
    let started = Instant::now();
    let corpus = synthetic(11, 3, 200, 3, 0.05, 0.1, 0.6, 8.0);
    let pipe = run_pipeline(&corpus, DEFAULT_TAU, DEFAULT_EPSILON).expect("pipeline");
    let matrix = pipe.matrix().expect("matrix");
    let runs = [
        bootstrap_cvar(&matrix, 0.95, 1000, 42, 1).expect("serial"),
        bootstrap_cvar(&matrix, 0.95, 1000, 42, 1).expect("serial repeat"),
        bootstrap_cvar(&matrix, 0.95, 1000, 42, 8).expect("parallel"),
    ];
    for other in &runs[1..] {
        for m in 0..3 {
            assert_eq!(runs[0].point[m].to_bits(), other.point[m].to_bits());
            assert_eq!(runs[0].lo[m].to_bits(), other.lo[m].to_bits());
            assert_eq!(runs[0].hi[m].to_bits(), other.hi[m].to_bits());
        }
        assert_eq!(runs[0].pairwise.len(), other.pairwise.len());
        for (a, b) in runs[0].pairwise.iter().zip(&other.pairwise) {
            assert_eq!(a.delta.to_bits(), b.delta.to_bits());
            assert_eq!(a.lo.to_bits(), b.lo.to_bits());
            assert_eq!(a.hi.to_bits(), b.hi.to_bits());
            assert_eq!(a.separable, b.separable);
        }
    }

    // Identical columns: every resample is paired, so the delta
    // distribution collapses to exactly zero.
    let xs: Vec<f64> = (0..50).map(|i| ((i * 37) % 50) as f64 / 7.0).collect();
    let mut values = Vec::with_capacity(100);
    for &x in &xs {
        values.push(x);
        values.push(x);
    }
    let prompts: Vec<String> = (0..50).map(|q| format!("p{q}")).collect();
    let twin = RiskMatrix::new(vec!["left".into(), "right".into()], prompts, values)
        .expect("twin matrix");
    let result = paired_bootstrap(
        &twin,
        "cvar_log_risk",
        |c| cvar(c, 0.95).unwrap(),
        500,
        7,
    )
    .expect("paired bootstrap");
    assert_eq!(result.pairwise.len(), 1);
    let pair = &result.pairwise[0];
    assert_eq!(pair.delta, 0.0);
    assert_eq!(pair.lo, 0.0);
    assert_eq!(pair.hi, 0.0);
    assert!(!pair.separable);
    finish(6, started, Duration::from_secs(60));
}

/// With well separated models the tail ranking must survive every
/// temperature and tail-level sweep unchanged.
#[test]
fn criterion_7_rank_stability_across_sweeps() {
    let started = Instant::now();
    let corpus = synthetic(23, 3, 160, 3, 0.03, 0.05, 0.85, 12.0);
    let pipe = run_pipeline(&corpus, DEFAULT_TAU, DEFAULT_EPSILON).expect("pipeline");
    let profiles = pipe.profiles(0.95).expect("profiles");
    let cvars: Vec<f64> = profiles.iter().map(|p| p.cvar_log_risk).collect();
    for w in cvars.windows(2) {
        assert!(
            w[1] - w[0] >= 1.0,
            "synthetic models not separated enough: {cvars:?}"
        );
    }
    let tau_report = tau_sweep(
        &pipe.scored,
        &DEFAULT_TAU_GRID,
        DEFAULT_TAU,
        0.95,
        DEFAULT_EPSILON,
    )
    .expect("tau sweep");
    assert_eq!(tau_report.rank_corr.len(), 3);
    for rc in &tau_report.rank_corr {
        assert_eq!(rc.tau_b, 1.0);
        assert_eq!(rc.rho, 1.0);
    }
    let alpha_report = alpha_sweep(&pipe.risk, &DEFAULT_ALPHA_GRID, 0.95).expect("alpha sweep");
    assert_eq!(alpha_report.rank_corr.len(), 3);
    for rc in &alpha_report.rank_corr {
        assert_eq!(rc.tau_b, 1.0);
        assert_eq!(rc.rho, 1.0);
    }
    finish(7, started, Duration::from_secs(120));
}

/// A flat-risk model and a rare-spike model must trade places between
/// the mean and tail orderings, and the report must flag exactly that
/// pair as an order disagreement.
#[test]
fn criterion_8_decision_flip_structure() {
    let started = Instant::now();
    let mut records = Vec::new();
    for q in 0..20 {
        records.push(flat_record("m_flat", q, "j1", 0.35));
        let spike = if q >= 18 { 0.97 } else { 0.02 };
        records.push(flat_record("m_spike", q, "j1", spike));
        records.push(flat_record("m_wall", q, "j1", 0.972));
    }
    let categories: Vec<String> = DEFAULT_CATEGORIES.iter().map(|c| c.to_string()).collect();
    let corpus = Corpus::build(records, categories, ScoreScale::Unit, CompletenessMode::Strict)
        .expect("corpus");
    let pipe = run_pipeline(&corpus, DEFAULT_TAU, DEFAULT_EPSILON).expect("pipeline");
    let report = baseline_aggregates(&pipe.risk, &pipe.harm, 0.95, DEFAULT_THETA1, DEFAULT_THETA2)
        .expect("baselines");

    for a in 0..report.rows.len() {
        for b in a + 1..report.rows.len() {
            let (ra, rb) = (&report.rows[a], &report.rows[b]);
            let mean_disagrees = (ra.mean_log_risk < rb.mean_log_risk)
                != (ra.cvar_log_risk < rb.cvar_log_risk);
            let planted = ra.model_id == "m_flat" && rb.model_id == "m_spike";
            assert_eq!(mean_disagrees, planted, "{} vs {}", ra.model_id, rb.model_id);
        }
    }

    assert_eq!(report.flips.len(), 1);
    let flip = &report.flips[0];
    assert_eq!(flip.kind, FlipKind::OrderDisagreement);
    assert_eq!(flip.model_a, "m_flat");
    assert_eq!(flip.model_b, "m_spike");
    assert!(flip.mean_a > flip.mean_b && flip.cvar_a < flip.cvar_b);
    finish(8, started, Duration::from_secs(5));
}

fn checksums(dir: &Path) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).expect("read dir") {
        let entry = entry.expect("dir entry");
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let bytes = std::fs::read(&path).expect("read file");
        let digest = Sha256::digest(&bytes);
        out.insert(
            entry.file_name().to_string_lossy().into_owned(),
            format!("{digest:x}"),
        );
    }
    out
}

/// Two full report runs with the same seed must produce byte-identical
/// output trees.
#[test]
fn criterion_9_end_to_end_determinism() {
    let started = Instant::now();
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tiny.jsonl");
    let work = tempfile::tempdir().expect("tempdir");
    let mut maps = Vec::new();
    for run in 0..2 {
        let out = work.path().join(format!("run{run}"));
        let status = Command::new(env!("CARGO_BIN_EXE_sharp"))
            .args([
                "report",
                "--input",
                fixture.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--seed",
                "7",
                "--boot",
                "800",
                "--workers",
                "3",
            ])
            .status()
            .expect("run report");
        assert!(status.success());
        maps.push(checksums(&out));
    }
    assert_eq!(maps[0], maps[1]);
    assert!(maps[0].len() >= 30, "expected a full report tree, got {}", maps[0].len());
    assert!(maps[0].contains_key("manifest.json"));
    finish(9, started, Duration::from_secs(60));
}
