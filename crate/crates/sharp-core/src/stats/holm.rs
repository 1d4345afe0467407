//! Holm step-down correction for familywise error control.

use alloc::vec::Vec;

use super::StatsError;

/// Per-hypothesis outcome of the Holm procedure, in input order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolmOutcome {
    /// Position of the hypothesis in the input list.
    pub index: usize,
    pub raw_p: f64,
    /// Running-max adjusted p, capped at 1.
    pub adjusted_p: f64,
    pub reject: bool,
}

/// Step-down Holm correction: sort p-values ascending, multiply the i-th
/// smallest by (m - i), carry the running maximum, cap at 1. A hypothesis
/// is rejected exactly when its adjusted p is at most `alpha`.
pub fn holm_correct(pvals: &[f64], alpha: f64) -> Result<Vec<HolmOutcome>, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::AlphaOutOfRange { alpha });
    }
    for &p in pvals {
        if !(0.0..=1.0).contains(&p) {
            return Err(StatsError::PValueOutOfRange { value: p });
        }
    }
    let m = pvals.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvals[a].total_cmp(&pvals[b]));

    let mut outcomes = alloc::vec![
        HolmOutcome {
            index: 0,
            raw_p: 0.0,
            adjusted_p: 0.0,
            reject: false,
        };
        m
    ];
    let mut running = 0.0f64;
    for (i, &idx) in order.iter().enumerate() {
        running = running.max((m - i) as f64 * pvals[idx]);
        let adjusted = running.min(1.0);
        outcomes[idx] = HolmOutcome {
            index: idx,
            raw_p: pvals[idx],
            adjusted_p: adjusted,
            reject: adjusted <= alpha,
        };
    }
    Ok(outcomes)
}
