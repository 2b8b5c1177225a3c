//! Farthest-point ordering and the prefix-matching bounds built on it.
//!
//! With `v_1, ..., v_n` the farthest-first order and `mwm` the minimum
//! perfect matching cost, `opt_2k = max_{i <= k} mwm(v_1..v_2i)` satisfies
//! `mu_2k <= 2 (1 + H_{k-1}) opt_2k`, and the best prefix overall is within
//! a factor `2 (1 + H_{floor(n/2) - 1})` of `mu`.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::matching::min_weight_perfect_matching_cost;
use crate::parallel::Execution;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyOrdering {
    pub order: Vec<usize>,
    /// `step_distance[i]` is the distance from `order[i]` to the earlier
    /// vertices; the first entry is `+inf`.
    pub step_distance: Vec<f64>,
}

/// Gonzalez ordering: repeatedly append the vertex farthest from those
/// already chosen. Ties go to the smaller index.
pub fn greedy_ordering(d: &DistanceMatrix, start: usize) -> Result<GreedyOrdering> {
    let n = d.n();
    if start >= n {
        return Err(Error::Invalid(format!("start vertex {start} outside 0..{n}")));
    }
    let mut order = Vec::with_capacity(n);
    let mut step_distance = Vec::with_capacity(n);
    let mut to_chosen = vec![f64::INFINITY; n];
    let mut chosen = vec![false; n];
    let mut next = start;
    let mut next_dist = f64::INFINITY;
    for _ in 0..n {
        order.push(next);
        step_distance.push(next_dist);
        chosen[next] = true;
        let row = d.row(next);
        let mut best: Option<(usize, f64)> = None;
        for v in 0..n {
            if chosen[v] {
                continue;
            }
            to_chosen[v] = to_chosen[v].min(row[v]);
            if best.is_none_or(|(_, bd)| to_chosen[v] > bd) {
                best = Some((v, to_chosen[v]));
            }
        }
        if let Some((v, dist)) = best {
            next = v;
            next_dist = dist;
        }
    }
    Ok(GreedyOrdering { order, step_distance })
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: usize) -> f64 {
    (1..=m).map(|i| 1.0 / i as f64).fold(0.0, |acc, x| acc + x)
}

/// Harmonic upper-bound factor `2 (1 + H_{k-1})` for `k >= 1` pairs.
pub fn harmonic_factor(k: usize) -> f64 {
    2.0 * (1.0 + harmonic(k.saturating_sub(1)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrefixBounds {
    pub k: usize,
    /// `mwm(v_1, ..., v_2k)`.
    pub mwm_prefix: f64,
    /// `opt_2k`, the running maximum of `mwm_prefix`.
    pub opt_prefix: f64,
    /// `2 (1 + H_{k-1}) opt_2k`.
    pub harmonic_ub: f64,
    pub tsp_ub: Option<f64>,
}

pub fn prefix_matching_sequence(d: &DistanceMatrix, ord: &GreedyOrdering) -> Result<Vec<PrefixBounds>> {
    prefix_matching_sequence_with(d, ord, Execution::default())
}

/// Prefix bounds for `k = 1..=floor(n/2)`. The per-`k` matchings are
/// independent and run under `exec`.
pub fn prefix_matching_sequence_with(
    d: &DistanceMatrix,
    ord: &GreedyOrdering,
    exec: Execution,
) -> Result<Vec<PrefixBounds>> {
    let n = ord.order.len();
    if n < 2 {
        return Err(Error::Invalid(format!("need at least 2 vertices, got {n}")));
    }
    let costs = exec.map_range(1..n / 2 + 1, |k| min_weight_perfect_matching_cost(d, &ord.order[..2 * k]));
    let mut out = Vec::with_capacity(costs.len());
    let mut opt = f64::NEG_INFINITY;
    for (i, c) in costs.into_iter().enumerate() {
        let k = i + 1;
        let c = c?;
        opt = opt.max(c);
        out.push(PrefixBounds {
            k,
            mwm_prefix: c,
            opt_prefix: opt,
            harmonic_ub: harmonic_factor(k) * opt,
            tsp_ub: None,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TJoinBounds {
    pub lower: f64,
    pub upper: f64,
    /// The prefix `v_1..v_2t` achieving the lower bound.
    pub selected: Vec<usize>,
    pub ordering: GreedyOrdering,
    pub prefixes: Vec<PrefixBounds>,
}

pub fn tjoin_bounds(d: &DistanceMatrix, start: usize) -> Result<TJoinBounds> {
    tjoin_bounds_with(d, start, Execution::default())
}

/// `lower = max_k mwm(v_1..v_2k) <= mu <= 2 (1 + H_{floor(n/2)-1}) lower`.
/// The selected prefix is the shortest one attaining the maximum.
pub fn tjoin_bounds_with(d: &DistanceMatrix, start: usize, exec: Execution) -> Result<TJoinBounds> {
    let n = d.n();
    if n < 2 {
        return Err(Error::Invalid(format!("need at least 2 vertices, got {n}")));
    }
    let ordering = greedy_ordering(d, start)?;
    let prefixes = prefix_matching_sequence_with(d, &ordering, exec)?;
    let best = prefixes
        .iter()
        .fold(&prefixes[0], |b, p| if p.mwm_prefix > b.mwm_prefix { p } else { b });
    let lower = best.mwm_prefix;
    Ok(TJoinBounds {
        lower,
        upper: harmonic_factor(n / 2) * lower,
        selected: ordering.order[..2 * best.k].to_vec(),
        ordering,
        prefixes,
    })
}
