//! Exact `mu` for complete graphs with weights in {1, 2}.
//!
//! For even `n` the whole vertex set is optimal and its minimum matching
//! costs `n - m1`, where `m1` is a maximum matching among weight-1 edges.
//! For odd `n` the optimum drops one vertex, so every removal is tried.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, WeightedGraph};
use crate::matching::max_cardinality_matching;
use crate::parallel::Execution;

#[derive(Debug, Clone, PartialEq)]
pub struct OneTwoInstance {
    pub n: usize,
    /// Pairs `(i, j)`, `i < j`, of weight 1; every other pair weighs 2.
    pub weight_one: BTreeSet<(usize, usize)>,
    pub labels: Vec<String>,
}

impl OneTwoInstance {
    pub fn new(n: usize, weight_one: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in weight_one {
            if a == b || a >= n || b >= n {
                return Err(Error::Invalid(format!("pair ({a}, {b}) is not an edge of K_{n}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(OneTwoInstance {
            n,
            weight_one: set,
            labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        if self.weight_one.contains(&(a.min(b), a.max(b))) {
            1.0
        } else {
            2.0
        }
    }

    pub fn to_distance_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let data = (0..n * n)
            .map(|k| if k / n == k % n { 0.0 } else { self.weight(k / n, k % n) })
            .collect();
        DistanceMatrix::new(n, data).expect("square and finite")
    }

    pub fn to_graph(&self) -> WeightedGraph {
        let n = self.n;
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges: Vec<_> = edges.map(|(i, j)| (i, j, self.weight(i, j))).collect();
        WeightedGraph::new(self.labels.clone(), edges).expect("complete simple graph")
    }
}

/// Accepts exactly the complete graphs whose weights are all 1 or 2.
pub fn validate_one_two(g: &WeightedGraph) -> Result<OneTwoInstance> {
    for e in g.edges() {
        if e.w != 1.0 && e.w != 2.0 {
            return Err(Error::NotOneTwo(g.label(e.u).into(), g.label(e.v).into(), e.w));
        }
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if g.edge_between(i, j).is_none() {
                return Err(Error::NotComplete(g.label(i).into(), g.label(j).into()));
            }
        }
    }
    let ones = g.edges().iter().filter(|e| e.w == 1.0).map(|e| (e.u, e.v));
    let mut inst = OneTwoInstance::new(g.n(), ones)?;
    inst.labels = g.labels().to_vec();
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneTwoSolution {
    pub value: f64,
    /// Optimal even vertex set.
    pub witness: Vec<usize>,
    /// Maximum matching among weight-1 edges inside the witness.
    pub weight_one_matching: Vec<(usize, usize)>,
    /// The vertex left out when `n` is odd.
    pub removed: Option<usize>,
}

/// `(|S| - m1, weight-1 matching)` for an even vertex set `S`.
fn even_value(inst: &OneTwoInstance, vertices: &[usize]) -> (f64, Vec<(usize, usize)>) {
    let local: Vec<(usize, usize, f64)> = (0..vertices.len())
        .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| inst.weight(vertices[i], vertices[j]) == 1.0)
        .map(|(i, j)| (i, j, 1.0))
        .collect();
    let g = WeightedGraph::from_edges(vertices.len(), local).expect("simple graph");
    let pairs: Vec<(usize, usize)> = max_cardinality_matching(&g)
        .pairs
        .into_iter()
        .map(|(i, j)| (vertices[i], vertices[j]))
        .collect();
    ((vertices.len() - pairs.len()) as f64, pairs)
}

pub fn mu_12(inst: &OneTwoInstance) -> Result<OneTwoSolution> {
    mu_12_with(inst, Execution::default())
}

pub fn mu_12_with(inst: &OneTwoInstance, exec: Execution) -> Result<OneTwoSolution> {
    let n = inst.n;
    if n < 2 {
        return Err(Error::Invalid(format!("need at least 2 vertices, got {n}")));
    }
    if n.is_multiple_of(2) {
        let witness: Vec<usize> = (0..n).collect();
        let (value, m) = even_value(inst, &witness);
        return Ok(OneTwoSolution { value, witness, weight_one_matching: m, removed: None });
    }
    let runs = exec.map_range(0..n, |r| {
        let rest: Vec<usize> = (0..n).filter(|&v| v != r).collect();
        let (value, m) = even_value(inst, &rest);
        (value, rest, m)
    });
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let (value, witness, m) = runs.into_iter().nth(best).unwrap();
    Ok(OneTwoSolution { value, witness, weight_one_matching: m, removed: Some(best) })
}
