//! Christofides tours and exact tours by enumeration. Half a Hamiltonian
//! cycle's cost bounds every `mu_2k` and `mu` from above, since the cycle
//! through the optimal vertices splits into two perfect matchings.

use crate::error::{Error, Result};
use crate::graph::{require_metric, DistanceMatrix};
use crate::matching::min_weight_perfect_matching;
use crate::TOL;

/// Largest instance [`brute_force_tsp`] accepts.
pub const BRUTE_FORCE_TSP_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    /// Cyclic vertex order; the closing edge is implied.
    pub order: Vec<usize>,
    pub cost: f64,
}

pub(crate) fn cycle_cost(d: &DistanceMatrix, order: &[usize]) -> f64 {
    let m = order.len();
    (0..m).map(|i| d.get(order[i], order[(i + 1) % m])).sum()
}

impl Tour {
    /// Validates that `order` is a permutation of `0..n` and prices it.
    pub fn new(d: &DistanceMatrix, order: Vec<usize>) -> Result<Tour> {
        let n = d.n();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::NotHamiltonian(format!("visits {} of {n} vertices", order.len())));
        }
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotHamiltonian(format!("vertex {v} repeated or out of range")));
            }
        }
        let cost = cycle_cost(d, &order);
        Ok(Tour { order, cost })
    }

    pub fn is_valid(&self, d: &DistanceMatrix) -> bool {
        Tour::new(d, self.order.clone()).is_ok_and(|t| (t.cost - self.cost).abs() <= TOL * (1.0 + t.cost))
    }
}

fn require_at_least_three(d: &DistanceMatrix) -> Result<()> {
    if d.n() < 3 {
        return Err(Error::Invalid(format!("tours need at least 3 vertices, got {}", d.n())));
    }
    Ok(())
}

/// Dense Prim; returns the tree as `(parent, child)` edges.
fn minimum_spanning_tree(d: &DistanceMatrix) -> Vec<(usize, usize)> {
    let n = d.n();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    key[0] = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || key[v] < key[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            edges.push((parent[u], u));
        }
        for v in 0..n {
            if !in_tree[v] && d.get(u, v) < key[v] {
                key[v] = d.get(u, v);
                parent[v] = u;
            }
        }
    }
    edges
}

/// Eulerian circuit of a connected multigraph with all degrees even,
/// starting at vertex 0; lower-indexed neighbors are taken first.
fn euler_circuit(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        match adj[v].get(next[v]) {
            Some(&(w, id)) => {
                used[id] = true;
                stack.push(w);
            }
            None => circuit.push(stack.pop().unwrap()),
        }
    }
    circuit.reverse();
    circuit
}

/// Christofides 1.5-approximation: minimum spanning tree, exact minimum
/// matching on its odd-degree vertices, Eulerian circuit, shortcutting.
pub fn christofides(d: &DistanceMatrix) -> Result<Tour> {
    require_at_least_three(d)?;
    require_metric(d)?;
    let n = d.n();
    let mut multigraph = minimum_spanning_tree(d);
    let mut degree = vec![0usize; n];
    for &(a, b) in &multigraph {
        degree[a] += 1;
        degree[b] += 1;
    }
    let odd: Vec<usize> = (0..n).filter(|&v| degree[v] % 2 == 1).collect();
    multigraph.extend(min_weight_perfect_matching(d, &odd)?.pairs);
    let mut seen = vec![false; n];
    let order: Vec<usize> = euler_circuit(n, &multigraph)
        .into_iter()
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .collect();
    Tour::new(d, order)
}

/// Optimal tour by enumerating permutations with vertex 0 fixed first.
pub fn brute_force_tsp(d: &DistanceMatrix) -> Result<Tour> {
    require_at_least_three(d)?;
    let n = d.n();
    if n > BRUTE_FORCE_TSP_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force TSP instance",
            limit: BRUTE_FORCE_TSP_LIMIT,
            got: n,
        });
    }
    struct Search<'a> {
        d: &'a DistanceMatrix,
        path: Vec<usize>,
        used: Vec<bool>,
        best: f64,
        best_order: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, partial: f64) {
            if partial >= self.best {
                return;
            }
            let n = self.used.len();
            let last = *self.path.last().unwrap();
            if self.path.len() == n {
                let total = partial + self.d.get(last, self.path[0]);
                if total < self.best {
                    self.best = total;
                    self.best_order = self.path.clone();
                }
                return;
            }
            for v in 1..n {
                if !self.used[v] {
                    self.used[v] = true;
                    self.path.push(v);
                    self.go(partial + self.d.get(last, v));
                    self.path.pop();
                    self.used[v] = false;
                }
            }
        }
    }
    let mut s = Search {
        d,
        path: vec![0],
        used: vec![false; n],
        best: f64::INFINITY,
        best_order: Vec::new(),
    };
    s.used[0] = true;
    s.go(0.0);
    Tour::new(d, s.best_order)
}

/// `christofides(d).cost / 2`, an upper bound on `mu` and every `mu_2k`.
pub fn tsp_half_upper_bound(d: &DistanceMatrix) -> Result<f64> {
    Ok(christofides(d)?.cost / 2.0)
}
