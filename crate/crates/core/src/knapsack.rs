//! The per-ear quantity `max(P)`: the largest sum of a subset of the ear's
//! edge weights that does not exceed half the ear's total weight.
//!
//! This is subset sum, so the exact routine is exponential (meet in the
//! middle, up to [`EXACT_LIMIT`] weights). The approximate routine is a
//! weight-scaling dynamic program returning `v` with
//! `(1 - eps) max(P) <= v <= max(P)` in `O(m^2 / eps)` time.

use crate::error::{Error, Result};
use crate::TOL;

/// Longest ear the exact routine accepts.
pub const EXACT_LIMIT: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnapsackMode {
    Exact,
    Approximate { epsilon: f64 },
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Invalid("ear has no edges".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::Invalid(format!("ear weight {w} is not positive")));
    }
    Ok(())
}

/// `max(P)` for an ear with the given edge weights.
pub fn ear_max(weights: &[f64], mode: KnapsackMode) -> Result<f64> {
    check_weights(weights)?;
    let cap = weights.iter().sum::<f64>() / 2.0;
    match mode {
        KnapsackMode::Exact => max_subset_sum_exact(weights, cap),
        KnapsackMode::Approximate { epsilon } => max_subset_sum_approx(weights, cap, epsilon),
    }
}

fn all_sums(weights: &[f64]) -> Vec<f64> {
    let mut sums = Vec::with_capacity(1 << weights.len());
    sums.push(0.0);
    for &w in weights {
        let len = sums.len();
        for i in 0..len {
            sums.push(sums[i] + w);
        }
    }
    sums
}

/// Largest subset sum not exceeding `cap` (within [`TOL`]).
pub fn max_subset_sum_exact(weights: &[f64], cap: f64) -> Result<f64> {
    if weights.len() > EXACT_LIMIT {
        return Err(Error::TooLarge {
            what: "exact knapsack ear length",
            limit: EXACT_LIMIT,
            got: weights.len(),
        });
    }
    let limit = cap + TOL;
    let (left, right) = weights.split_at(weights.len() / 2);
    let left = all_sums(left);
    let mut right = all_sums(right);
    right.sort_unstable_by(f64::total_cmp);
    let mut best = 0.0f64;
    for s in left {
        if s > limit {
            continue;
        }
        let room = limit - s;
        let idx = right.partition_point(|&r| r <= room);
        if idx > 0 {
            best = best.max(s + right[idx - 1]);
        }
    }
    Ok(best)
}

/// `(1 - eps)`-approximate largest subset sum not exceeding `cap`.
///
/// Weights are rounded down to multiples of `K = eps * G / m`, where `G` is
/// the greedy (largest-first) value, which is more than half the optimum.
/// For every rounded total the DP keeps the lightest real subset, so the
/// answer is feasible and loses less than `m K <= eps * OPT`.
pub fn max_subset_sum_approx(weights: &[f64], cap: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Invalid(format!("epsilon {epsilon} outside (0, 1)")));
    }
    let limit = cap + TOL;
    let mut items: Vec<f64> = weights.iter().copied().filter(|&w| w <= limit).collect();
    if items.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = items.iter().sum();
    if total <= limit {
        return Ok(total);
    }
    items.sort_unstable_by(|a, b| b.total_cmp(a));
    let greedy = items.iter().fold(0.0, |acc, &w| if acc + w <= limit { acc + w } else { acc });
    let scale = epsilon * greedy / items.len() as f64;
    let buckets = (limit / scale).floor() as usize;
    let mut lightest = vec![f64::INFINITY; buckets + 1];
    lightest[0] = 0.0;
    for &w in &items {
        let r = (w / scale).floor() as usize;
        if r == 0 || r > buckets {
            continue;
        }
        for s in (r..=buckets).rev() {
            let cand = lightest[s - r] + w;
            if cand < lightest[s] && cand <= limit {
                lightest[s] = cand;
            }
        }
    }
    Ok(lightest.into_iter().filter(|x| x.is_finite()).fold(greedy, f64::max))
}
