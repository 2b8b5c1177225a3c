//! Exhaustive ground truth for small instances: `mu`, `mu_2k`, valid edge
//! sets and the agreement between the matching and valid-set formulations.
//! Size limits are hard errors.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{metric_closure, DistanceMatrix, WeightedGraph};
use crate::matching::{brute_force_matching, subset_matching_costs};
use crate::parallel::Execution;
use crate::TOL;

pub const CYCLE_EDGE_LIMIT: usize = 20;
pub const VALID_SET_EDGE_LIMIT: usize = 16;
pub const MU_VERTEX_LIMIT: usize = 12;
pub const EQUIVALENCE_VERTEX_LIMIT: usize = 10;

/// An edge subset `J` with `w(C) >= 2 w(C & J)` on every cycle `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidEdgeSet {
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    pub weight: f64,
    /// Vertices of odd degree in the subset.
    pub odd_vertices: Vec<usize>,
}

impl ValidEdgeSet {
    /// Wraps an edge subset, computing its weight and odd vertices. Does not
    /// check validity.
    pub fn from_edges(g: &WeightedGraph, mut edges: Vec<usize>) -> ValidEdgeSet {
        edges.sort_unstable();
        edges.dedup();
        let mut degree = vec![0usize; g.n()];
        let mut weight = 0.0;
        for &e in &edges {
            let e = g.edges()[e];
            degree[e.u] += 1;
            degree[e.v] += 1;
            weight += e.w;
        }
        let odd_vertices = (0..g.n()).filter(|&v| degree[v] % 2 == 1).collect();
        ValidEdgeSet { edges, weight, odd_vertices }
    }
}

fn limit(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        return Err(Error::TooLarge { what, limit, got });
    }
    Ok(())
}

fn mask_bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every simple cycle of `g` as an edge bitmask, in ascending mask order.
/// Each cycle is grown from its smallest vertex through larger vertices.
pub fn enumerate_cycles(g: &WeightedGraph) -> Result<Vec<u32>> {
    limit("cycle enumeration edge count", CYCLE_EDGE_LIMIT, g.edges().len())?;
    let adj = g.adjacency();
    let mut found = HashSet::new();
    fn extend(
        adj: &[Vec<(usize, usize)>],
        start: usize,
        v: usize,
        depth: usize,
        on_path: &mut [bool],
        mask: u32,
        found: &mut HashSet<u32>,
    ) {
        for &(w, e) in &adj[v] {
            if w == start && depth >= 2 {
                found.insert(mask | 1 << e);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                extend(adj, start, w, depth + 1, on_path, mask | 1 << e, found);
                on_path[w] = false;
            }
        }
    }
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        extend(&adj, s, s, 0, &mut on_path, 0, &mut found);
        on_path[s] = false;
    }
    let mut cycles: Vec<u32> = found.into_iter().collect();
    cycles.sort_unstable();
    Ok(cycles)
}

fn mask_weight(g: &WeightedGraph, mask: u32) -> f64 {
    mask_bits(mask).into_iter().map(|e| g.edges()[e].w).fold(0.0, |acc, x| acc + x)
}

/// Whether `w(C) >= 2 w(C & J)` (within [`TOL`]) on every simple cycle.
pub fn is_valid_edge_set(g: &WeightedGraph, edges: &[usize]) -> Result<bool> {
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edges().len()) {
        return Err(Error::Invalid(format!("edge index {e} out of range")));
    }
    let j: u32 = edges.iter().fold(0, |m, &e| m | 1 << e);
    Ok(enumerate_cycles(g)?
        .into_iter()
        .all(|c| mask_weight(g, c) + TOL >= 2.0 * mask_weight(g, c & j)))
}

/// Sorted-index-list comparison of two bitmasks.
fn lex_less(a: usize, b: usize) -> bool {
    let x = a ^ b;
    if x == 0 {
        return false;
    }
    // At the first differing index one list has an element the other lacks.
    // That list is smaller unless the other one has already ended.
    let first = x.trailing_zeros();
    if a >> first & 1 == 1 {
        b >> first != 0
    } else {
        a >> first == 0
    }
}

pub fn brute_force_max_valid_set(g: &WeightedGraph) -> Result<ValidEdgeSet> {
    brute_force_max_valid_set_with(g, Execution::default())
}

/// Maximum-weight valid edge set by trying every subset. Among subsets
/// within [`TOL`] of the maximum the lexicographically smallest sorted index
/// list wins.
pub fn brute_force_max_valid_set_with(g: &WeightedGraph, exec: Execution) -> Result<ValidEdgeSet> {
    let m = g.edges().len();
    limit("valid-set search edge count", VALID_SET_EDGE_LIMIT, m)?;
    let cycles = enumerate_cycles(g)?;
    let mut weight = vec![0.0f64; 1 << m];
    for mask in 1usize..1 << m {
        let low = mask.trailing_zeros() as usize;
        weight[mask] = weight[mask & (mask - 1)] + g.edges()[low].w;
    }
    let value = exec.map_range(0..1 << m, |j| {
        let ok = cycles
            .iter()
            .all(|&c| weight[c as usize] + TOL >= 2.0 * weight[c as usize & j]);
        if ok {
            weight[j]
        } else {
            f64::NEG_INFINITY
        }
    });
    let best = value.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut pick = usize::MAX;
    for (j, &v) in value.iter().enumerate() {
        if v >= best - TOL && (pick == usize::MAX || lex_less(j, pick)) {
            pick = j;
        }
    }
    let mut set = ValidEdgeSet::from_edges(g, mask_bits(pick as u32));
    set.weight = weight[pick];
    Ok(set)
}

/// A vertex subset and the optimum it attains.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetValue {
    pub value: f64,
    pub subset: Vec<usize>,
}

fn best_subset(d: &DistanceMatrix, size: Option<usize>) -> SubsetValue {
    let n = d.n();
    let all: Vec<usize> = (0..n).collect();
    let costs = subset_matching_costs(d, &all);
    let eligible = |mask: usize| match size {
        Some(s) => mask.count_ones() as usize == s,
        None => mask.count_ones().is_multiple_of(2),
    };
    let best = (0..costs.len())
        .filter(|&m| eligible(m))
        .map(|m| costs[m])
        .fold(f64::NEG_INFINITY, f64::max);
    let mut pick = usize::MAX;
    for mask in (0..costs.len()).filter(|&m| eligible(m)) {
        if costs[mask] >= best - TOL && (pick == usize::MAX || lex_less(mask, pick)) {
            pick = mask;
        }
    }
    SubsetValue {
        value: best,
        subset: mask_bits(pick as u32),
    }
}

/// `mu(d)`: the largest minimum perfect matching cost over even subsets.
pub fn brute_force_mu(d: &DistanceMatrix) -> Result<SubsetValue> {
    limit("brute-force mu vertex count", MU_VERTEX_LIMIT, d.n())?;
    Ok(best_subset(d, None))
}

/// `mu_2k(d)`: the same maximum over subsets of exactly `2k` vertices.
pub fn brute_force_mu_2k(d: &DistanceMatrix, k: usize) -> Result<SubsetValue> {
    limit("brute-force mu_2k vertex count", MU_VERTEX_LIMIT, d.n())?;
    if k == 0 || 2 * k > d.n() {
        return Err(Error::Invalid(format!("k = {k} outside 1..={}", d.n() / 2)));
    }
    Ok(best_subset(d, Some(2 * k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub valid_set: ValidEdgeSet,
    pub mu: SubsetValue,
    /// Minimum matching cost of the valid set's odd vertices in the closure.
    pub odd_matching_cost: f64,
    pub holds: bool,
}

/// Compares the maximum valid set weight with `mu` of the metric closure,
/// and the valid set's weight with the matching cost of its odd vertices.
pub fn check_formulation_equivalence(g: &WeightedGraph) -> Result<EquivalenceReport> {
    limit("equivalence check vertex count", EQUIVALENCE_VERTEX_LIMIT, g.n())?;
    limit("equivalence check edge count", VALID_SET_EDGE_LIMIT, g.edges().len())?;
    let d = metric_closure(g)?;
    let valid_set = brute_force_max_valid_set(g)?;
    let mu = brute_force_mu(&d)?;
    let odd_matching_cost = brute_force_matching(&d, &valid_set.odd_vertices)?.cost;
    let holds = (valid_set.weight - mu.value).abs() <= TOL && (odd_matching_cost - valid_set.weight).abs() <= TOL;
    Ok(EquivalenceReport { valid_set, mu, odd_matching_cost, holds })
}
