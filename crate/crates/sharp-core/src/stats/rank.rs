//! Rank correlation primitives: midranks, Kendall tau-b, Spearman rho.
//!
//! Kendall's discordant-pair count runs in O(n log n) via merge-sort
//! inversion counting. Two-sided p-values are exact for tie-free samples
//! up to n = 33 (inversion-count enumeration, exact in u128) and use the
//! tie-corrected normal approximation otherwise.

use alloc::vec;
use alloc::vec::Vec;

use super::special;
use super::StatsError;
use crate::fmath;

/// Largest tie-free n whose exact inversion distribution fits in u128.
const EXACT_KENDALL_MAX_N: usize = 33;

/// Result of a rank correlation test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationTest {
    pub coefficient: f64,
    /// Two-sided p-value; NaN when the sample is too small to test.
    pub p_value: f64,
    pub n: usize,
    /// Whether the p-value came from exact enumeration.
    pub exact: bool,
}

/// 1-based ranks with ties sharing their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let mid = (start + end - 1) as f64 / 2.0 + 1.0;
        for &idx in &order[start..end] {
            ranks[idx] = mid;
        }
        start = end;
    }
    ranks
}

fn check_pair(x: &[f64], y: &[f64], min: usize) -> Result<(), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < min {
        return Err(StatsError::TooShort { n: x.len(), min });
    }
    if let Some(&bad) = x.iter().chain(y).find(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteValue { value: bad });
    }
    Ok(())
}

struct KendallCore {
    n: usize,
    /// Total pair count n(n-1)/2.
    tot: u64,
    xtie: u64,
    ytie: u64,
    discordant: u64,
    /// Concordant minus discordant pairs.
    ncd: f64,
    tau: f64,
    /// Tie-group sums t(t-1)(t-2) per argument.
    x0: f64,
    y0: f64,
    /// Tie-group sums t(t-1)(2t+5) per argument.
    x1: f64,
    y1: f64,
}

fn tie_sums(sorted_group_sizes: impl Iterator<Item = u64>) -> (u64, f64, f64) {
    let mut pairs = 0u64;
    let mut cubic = 0.0;
    let mut weighted = 0.0;
    for t in sorted_group_sizes {
        let tf = t as f64;
        pairs += t * (t - 1) / 2;
        cubic += tf * (tf - 1.0) * (tf - 2.0);
        weighted += tf * (tf - 1.0) * (2.0 * tf + 5.0);
    }
    (pairs, cubic, weighted)
}

fn group_sizes_by<F: Fn(usize, usize) -> bool>(order: &[usize], same: F) -> Vec<u64> {
    let mut sizes = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && same(order[start], order[end]) {
            end += 1;
        }
        sizes.push((end - start) as u64);
        start = end;
    }
    sizes
}

/// Strict inversion count of `values` by merge sort.
fn count_inversions(values: &mut [f64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mut buf = vec![0.0; n];
    let mut inversions = 0u64;
    let mut width = 1;
    while width < n {
        let mut left = 0;
        while left + width < n {
            let mid = left + width;
            let right = (mid + width).min(n);
            let (mut i, mut j, mut out) = (left, mid, left);
            while i < mid && j < right {
                if values[i] > values[j] {
                    inversions += (mid - i) as u64;
                    buf[out] = values[j];
                    j += 1;
                } else {
                    buf[out] = values[i];
                    i += 1;
                }
                out += 1;
            }
            buf[out..out + (mid - i)].copy_from_slice(&values[i..mid]);
            out += mid - i;
            buf[out..out + (right - j)].copy_from_slice(&values[j..right]);
            values[left..right].copy_from_slice(&buf[left..right]);
            left = right;
        }
        width *= 2;
    }
    inversions
}

fn kendall_core(x: &[f64], y: &[f64]) -> Result<KendallCore, StatsError> {
    check_pair(x, y, 2)?;
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));

    let (xtie, x0, x1) = tie_sums(group_sizes_by(&order, |a, b| x[a] == x[b]).into_iter());
    let mut y_order: Vec<usize> = (0..n).collect();
    y_order.sort_by(|&a, &b| y[a].total_cmp(&y[b]));
    let (ytie, y0, y1) = tie_sums(group_sizes_by(&y_order, |a, b| y[a] == y[b]).into_iter());
    let (ntie, _, _) = tie_sums(
        group_sizes_by(&order, |a, b| x[a] == x[b] && y[a] == y[b]).into_iter(),
    );

    // sorted by (x asc, y asc), equal-x runs carry no strict y-inversions,
    // so strict inversions in y are exactly the discordant pairs
    let mut y_in_x_order: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let discordant = count_inversions(&mut y_in_x_order);

    let tot = (n as u64) * (n as u64 - 1) / 2;
    if tot == xtie || tot == ytie {
        return Err(StatsError::DegenerateRanking);
    }
    let ncd = (tot - xtie - ytie + ntie) as f64 - 2.0 * discordant as f64;
    let nx = (tot - xtie) as f64;
    let ny = (tot - ytie) as f64;
    // Cauchy-Schwarz equality: perfect orderings hit +/-1 exactly instead
    // of picking up sqrt rounding
    let tau = if ncd * ncd == nx * ny {
        if ncd > 0.0 { 1.0 } else { -1.0 }
    } else {
        (ncd / fmath::sqrt(nx) / fmath::sqrt(ny)).clamp(-1.0, 1.0)
    };
    Ok(KendallCore {
        n,
        tot,
        xtie,
        ytie,
        discordant,
        ncd,
        tau,
        x0,
        y0,
        x1,
        y1,
    })
}

/// Kendall's tau-b with tie normalization.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    Ok(kendall_core(x, y)?.tau)
}

/// Cumulative inversion counts up to `limit` and the total n! (both exact).
fn inversion_cumulative(n: usize, limit: u64) -> (u128, u128) {
    let mut row: Vec<u128> = vec![1];
    for m in 2..=n {
        let mut next = vec![0u128; row.len() + m - 1];
        for (k, &c) in row.iter().enumerate() {
            for j in 0..m {
                next[k + j] += c;
            }
        }
        row = next;
    }
    let total: u128 = row.iter().sum();
    let cum: u128 = row.iter().take(limit as usize + 1).sum();
    (cum, total)
}

/// Kendall's tau-b with a two-sided p-value.
pub fn kendall_tau_b_test(x: &[f64], y: &[f64]) -> Result<CorrelationTest, StatsError> {
    let core = kendall_core(x, y)?;
    let tie_free = core.xtie == 0 && core.ytie == 0;
    if tie_free && core.n <= EXACT_KENDALL_MAX_N {
        let d = core.discordant.min(core.tot - core.discordant);
        let (cum, total) = inversion_cumulative(core.n, d);
        let p = (2.0 * (cum as f64) / (total as f64)).min(1.0);
        return Ok(CorrelationTest {
            coefficient: core.tau,
            p_value: p,
            n: core.n,
            exact: true,
        });
    }
    let p = if core.n < 3 {
        f64::NAN
    } else {
        let n = core.n as f64;
        let m = n * (n - 1.0);
        let var_s = (m * (2.0 * n + 5.0) - core.x1 - core.y1) / 18.0
            + 2.0 * (core.xtie as f64) * (core.ytie as f64) / m
            + core.x0 * core.y0 / (9.0 * m * (n - 2.0));
        special::normal_sf_two_sided(core.ncd / fmath::sqrt(var_s))
    };
    Ok(CorrelationTest {
        coefficient: core.tau,
        p_value: p,
        n: core.n,
        exact: false,
    })
}

/// Spearman's rho: Pearson correlation of midranks.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    check_pair(x, y, 2)?;
    let rx = midranks(x);
    let ry = midranks(y);
    // midranks always sum to n(n+1)/2, so the mean is (n+1)/2 exactly;
    // centering on it keeps the moments exact for half-integer ranks
    let center = (x.len() as f64 + 1.0) / 2.0;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        let (xc, yc) = (a - center, b - center);
        sxy += xc * yc;
        sxx += xc * xc;
        syy += yc * yc;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateRanking);
    }
    // Cauchy-Schwarz equality: monotone-identical rankings yield exact +/-1
    if sxy * sxy == sxx * syy {
        return Ok(if sxy > 0.0 { 1.0 } else { -1.0 });
    }
    Ok((sxy / fmath::sqrt(sxx) / fmath::sqrt(syy)).clamp(-1.0, 1.0))
}

/// Spearman's rho with a two-sided p-value from the t transform.
pub fn spearman_test(x: &[f64], y: &[f64]) -> Result<CorrelationTest, StatsError> {
    let rho = spearman_rho(x, y)?;
    let n = x.len();
    let p = if n < 3 {
        f64::NAN
    } else if rho * rho >= 1.0 {
        0.0
    } else {
        let t = rho * fmath::sqrt((n as f64 - 2.0) / (1.0 - rho * rho));
        special::t_sf_two_sided(t, n - 2)
    };
    Ok(CorrelationTest {
        coefficient: rho,
        p_value: p,
        n,
        exact: false,
    })
}
