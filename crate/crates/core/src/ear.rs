//! Ear decompositions and the upper bound `mu(G) <= sum_i max(P_i) + w(bridges)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{contract_bridges, find_bridges, metric_closure, DistanceMatrix, WeightedGraph};
use crate::knapsack::{ear_max, KnapsackMode, EXACT_LIMIT};
use crate::parallel::Execution;
use crate::tsp::{christofides, Tour};
use crate::TOL;

/// One ear. A cycle repeats its start vertex at the end, so
/// `edge_weights.len() == vertices.len() - 1` in both cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Ear {
    pub vertices: Vec<usize>,
    pub edge_weights: Vec<f64>,
    pub is_trivial: bool,
}

impl Ear {
    fn new(vertices: Vec<usize>, edge_weights: Vec<f64>) -> Ear {
        let is_trivial = edge_weights.len() == 1;
        Ear { vertices, edge_weights, is_trivial }
    }

    pub fn is_cycle(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn len(&self) -> usize {
        self.edge_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_weights.is_empty()
    }

    pub fn weight(&self) -> f64 {
        self.edge_weights.iter().fold(0.0, |acc, x| acc + x)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// Checks the decomposition against `g`: the first ear is a cycle, later
    /// ears attach at known vertices and only introduce new interior
    /// vertices, and the ears partition the edge set with matching weights.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        let mut used = vec![false; g.edges().len()];
        let mut known = vec![false; g.n()];
        for (i, ear) in self.ears.iter().enumerate() {
            if ear.vertices.len() != ear.edge_weights.len() + 1 || ear.is_empty() {
                return bad(format!("ear {i}: {} vertices for {} edges", ear.vertices.len(), ear.len()));
            }
            if ear.is_trivial != (ear.len() == 1) {
                return bad(format!("ear {i}: trivial flag is wrong"));
            }
            if ear.vertices.iter().any(|&v| v >= g.n()) {
                return bad(format!("ear {i}: vertex out of range"));
            }
            let first = ear.vertices[0];
            let last = *ear.vertices.last().unwrap();
            if i == 0 {
                if !ear.is_cycle() {
                    return bad("first ear is not a cycle".into());
                }
            } else if !known[first] || !known[last] {
                return bad(format!("ear {i}: endpoint not in earlier ears"));
            }
            let interior = &ear.vertices[1..ear.vertices.len() - 1];
            for &v in interior {
                if known[v] || (i == 0 && v == first) {
                    return bad(format!("ear {i}: interior vertex {} already present", g.label(v)));
                }
                known[v] = true;
            }
            known[first] = true;
            known[last] = true;
            for (k, pair) in ear.vertices.windows(2).enumerate() {
                let Some(e) = g.edge_between(pair[0], pair[1]) else {
                    return bad(format!("ear {i}: {}-{} is not an edge", g.label(pair[0]), g.label(pair[1])));
                };
                if std::mem::replace(&mut used[e], true) {
                    return bad(format!("ear {i}: edge {}-{} used twice", g.label(pair[0]), g.label(pair[1])));
                }
                if (g.edges()[e].w - ear.edge_weights[k]).abs() > TOL {
                    return bad(format!("ear {i}: weight mismatch on edge {k}"));
                }
            }
        }
        if let Some(e) = used.iter().position(|u| !u) {
            let e = g.edges()[e];
            return bad(format!("edge {}-{} is not covered", g.label(e.u), g.label(e.v)));
        }
        Ok(())
    }

    /// One ear per line: `cycle|path`, the vertex labels, then `:` and the
    /// edge weights.
    pub fn to_text(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for ear in &self.ears {
            out.push_str(if ear.is_cycle() { "cycle" } else { "path" });
            for &v in &ear.vertices {
                let _ = write!(out, " {}", labels[v]);
            }
            out.push_str(" :");
            for w in &ear.edge_weights {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }
}

fn require_bridgeless(g: &WeightedGraph) -> Result<()> {
    if let Some(&b) = find_bridges(g).first() {
        let e = g.edges()[b];
        return Err(Error::HasBridge(g.label(e.u).into(), g.label(e.v).into()));
    }
    Ok(())
}

pub fn dfs_ear_decomposition(g: &WeightedGraph) -> Result<EarDecomposition> {
    dfs_ear_decomposition_from(g, 0)
}

/// Chain decomposition of a depth-first tree rooted at `root`.
///
/// Vertices are visited in preorder; each back edge `v -> w` to a descendant
/// (taken in preorder of `w`) starts an ear that climbs tree edges from `w`
/// until it reaches an already visited vertex.
pub fn dfs_ear_decomposition_from(g: &WeightedGraph, root: usize) -> Result<EarDecomposition> {
    let n = g.n();
    if root >= n {
        return Err(Error::Invalid(format!("root {root} outside 0..{n}")));
    }
    g.require_connected()?;
    require_bridgeless(g)?;
    let adj = g.adjacency();
    let mut pre = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(root, 0usize)];
    pre[root] = 0;
    order.push(root);
    while let Some((v, i)) = stack.last_mut() {
        let v = *v;
        if let Some(&(w, e)) = adj[v].get(*i) {
            *i += 1;
            if pre[w] == usize::MAX {
                pre[w] = order.len();
                order.push(w);
                parent_edge[w] = e;
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }

    let edges = g.edges();
    let mut visited = vec![false; n];
    let mut ears = Vec::new();
    for &v in &order {
        let mut back: Vec<(usize, usize)> = adj[v]
            .iter()
            .filter(|&&(w, e)| pre[w] > pre[v] && parent_edge[w] != e)
            .map(|&(w, e)| (pre[w], e))
            .collect();
        back.sort_unstable();
        for (_, e) in back {
            visited[v] = true;
            let mut cur = edges[e].other(v);
            let mut vertices = vec![v, cur];
            let mut weights = vec![edges[e].w];
            while !visited[cur] {
                visited[cur] = true;
                let pe = edges[parent_edge[cur]];
                cur = pe.other(cur);
                vertices.push(cur);
                weights.push(pe.w);
            }
            ears.push(Ear::new(vertices, weights));
        }
    }
    Ok(EarDecomposition { ears })
}

fn hamiltonian_first(n: usize, order: &[usize], weight: impl Fn(usize, usize) -> f64) -> EarDecomposition {
    let mut on_tour = vec![false; n * n];
    let mut cycle = order.to_vec();
    cycle.push(order[0]);
    let weights: Vec<f64> = cycle
        .windows(2)
        .map(|p| {
            on_tour[p[0] * n + p[1]] = true;
            on_tour[p[1] * n + p[0]] = true;
            weight(p[0], p[1])
        })
        .collect();
    let mut ears = vec![Ear::new(cycle, weights)];
    for i in 0..n {
        for j in i + 1..n {
            if !on_tour[i * n + j] {
                ears.push(Ear::new(vec![i, j], vec![weight(i, j)]));
            }
        }
    }
    EarDecomposition { ears }
}

/// The tour as the first ear, then every remaining edge of the complete
/// graph as a single-edge ear.
pub fn hamiltonian_first_decomposition(d: &DistanceMatrix, tour: &Tour) -> Result<EarDecomposition> {
    let tour = Tour::new(d, tour.order.clone())?;
    if d.n() < 3 {
        return Err(Error::NotHamiltonian(format!("{} vertices cannot form a cycle", d.n())));
    }
    Ok(hamiltonian_first(d.n(), &tour.order, |i, j| d.get(i, j)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Dfs,
    HamiltonianFirst,
    /// Minimum over DFS from every root and, on complete graphs,
    /// Hamiltonian-first.
    Best,
}

/// Which decomposition produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chosen {
    Dfs { root: usize },
    HamiltonianFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EarBound {
    pub bound: f64,
    pub bridge_weight: f64,
    /// Bridgeless graph the decomposition refers to.
    pub contracted: WeightedGraph,
    pub decomposition: EarDecomposition,
    /// Certified per-ear contribution, aligned with `decomposition.ears`.
    pub ear_values: Vec<f64>,
    pub chosen: Chosen,
}

/// Certified upper bound on `max(P)`. Ears up to [`EXACT_LIMIT`] edges are
/// solved exactly; longer ones need `epsilon`, and the approximate value is
/// inflated by `1 / (1 - epsilon)` and capped at half the ear's weight.
pub fn certified_ear_max(weights: &[f64], epsilon: Option<f64>) -> Result<f64> {
    match epsilon {
        _ if weights.len() <= EXACT_LIMIT => ear_max(weights, KnapsackMode::Exact),
        None => ear_max(weights, KnapsackMode::Exact),
        Some(eps) => {
            let v = ear_max(weights, KnapsackMode::Approximate { epsilon: eps })?;
            let half = weights.iter().sum::<f64>() / 2.0;
            Ok((v / (1.0 - eps)).min(half))
        }
    }
}

/// Sum of certified per-ear values (single-edge ears contribute 0), plus
/// the per-ear values themselves.
pub fn decomposition_bound(
    decomposition: &EarDecomposition,
    epsilon: Option<f64>,
    exec: Execution,
) -> Result<(f64, Vec<f64>)> {
    let values = exec
        .map(&decomposition.ears, |ear| {
            if ear.is_trivial {
                Ok(0.0)
            } else {
                certified_ear_max(&ear.edge_weights, epsilon)
            }
        })
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    Ok((values.iter().fold(0.0, |acc, x| acc + x), values))
}

fn missing_pair(g: &WeightedGraph) -> Option<(usize, usize)> {
    (0..g.n())
        .flat_map(|i| (i + 1..g.n()).map(move |j| (i, j)))
        .find(|&(i, j)| g.edge_between(i, j).is_none())
}

fn hamiltonian_on_graph(g: &WeightedGraph) -> Result<EarDecomposition> {
    if g.edges().is_empty() {
        return Ok(EarDecomposition::default());
    }
    let tour = christofides(&metric_closure(g)?)?;
    Ok(hamiltonian_first(g.n(), &tour.order, |i, j| g.weight(i, j).unwrap()))
}

pub fn ear_upper_bound(g: &WeightedGraph, strategy: Strategy, epsilon: Option<f64>) -> Result<EarBound> {
    ear_upper_bound_with(g, strategy, epsilon, Execution::default())
}

/// `sum_i max(P_i) + w(bridges)` for a decomposition of the bridgeless
/// remainder chosen by `strategy`.
pub fn ear_upper_bound_with(
    g: &WeightedGraph,
    strategy: Strategy,
    epsilon: Option<f64>,
    exec: Execution,
) -> Result<EarBound> {
    if let Some(eps) = epsilon {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Invalid(format!("epsilon {eps} outside (0, 1)")));
        }
    }
    let complete = missing_pair(g);
    if strategy == Strategy::HamiltonianFirst {
        if let Some((i, j)) = complete {
            return Err(Error::NotComplete(g.label(i).into(), g.label(j).into()));
        }
    }
    let bc = contract_bridges(g)?;
    let h = &bc.contracted;
    let build = |chosen: Chosen| -> Result<(EarDecomposition, f64, Vec<f64>)> {
        let dec = match chosen {
            Chosen::Dfs { .. } if h.edges().is_empty() => EarDecomposition::default(),
            Chosen::Dfs { root } => dfs_ear_decomposition_from(h, root)?,
            Chosen::HamiltonianFirst => hamiltonian_on_graph(h)?,
        };
        let (total, values) = decomposition_bound(&dec, epsilon, exec)?;
        Ok((dec, total, values))
    };
    let candidates: Vec<Chosen> = match strategy {
        Strategy::Dfs => vec![Chosen::Dfs { root: 0 }],
        Strategy::HamiltonianFirst => vec![Chosen::HamiltonianFirst],
        Strategy::Best => {
            let mut c: Vec<Chosen> = (0..h.n()).map(|root| Chosen::Dfs { root }).collect();
            if complete.is_none() {
                c.push(Chosen::HamiltonianFirst);
            }
            c
        }
    };
    let results = exec.map(&candidates, |&c| build(c));
    let mut best: Option<(Chosen, EarDecomposition, f64, Vec<f64>)> = None;
    for (c, r) in candidates.into_iter().zip(results) {
        let (dec, total, values) = r?;
        if best.as_ref().is_none_or(|b| total < b.2) {
            best = Some((c, dec, total, values));
        }
    }
    let (chosen, decomposition, total, ear_values) = best.expect("at least one candidate");
    Ok(EarBound {
        bound: total + bc.bridge_weight,
        bridge_weight: bc.bridge_weight,
        contracted: bc.contracted,
        decomposition,
        ear_values,
        chosen,
    })
}
