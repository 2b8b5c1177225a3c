//! Deterministic instance generators. Everything random is driven by a
//! seeded `ChaCha8Rng`, so a seed always yields the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{metric_closure, DistanceMatrix, WeightedGraph};
use crate::one_two::OneTwoInstance;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weight drawn uniformly from `(0, 1]`.
fn unit_weight(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// `2 * pairs` points on a line at `i` and `i + epsilon`, as a complete
/// graph. Its full vertex set matches for `pairs * epsilon`, while the
/// farthest pair is about `pairs - 1` apart.
pub fn line_pairs(pairs: usize, epsilon: f64) -> Result<WeightedGraph> {
    if pairs == 0 || !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Invalid(format!("need pairs >= 1 and 0 < epsilon < 1, got {pairs}, {epsilon}")));
    }
    let pts: Vec<f64> = (0..pairs).flat_map(|i| [i as f64, i as f64 + epsilon]).collect();
    WeightedGraph::complete_from_metric(&DistanceMatrix::from_line(&pts), None)
}

/// Complete graph on `n` vertices with every weight 1.
pub fn unit_complete(n: usize) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    WeightedGraph::complete_from_metric(&DistanceMatrix::uniform(n, 1.0), None)
}

/// Random (1,2)-instance: each pair independently has weight 1 with
/// probability `p1`.
pub fn one_two(n: usize, p1: f64, seed: u64) -> Result<OneTwoInstance> {
    if n < 2 || !(0.0..=1.0).contains(&p1) {
        return Err(Error::Invalid(format!("need n >= 2 and p1 in [0, 1], got {n}, {p1}")));
    }
    let mut r = rng(seed);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| r.gen_bool(p1))
        .collect();
    OneTwoInstance::new(n, pairs)
}

/// The eight-vertex gap example: a 7-cycle with weights 5,2,1,2,3,1,2 and a
/// path `v1 - v8 - v4` of weights `3 + eps`, `2 + eps`. Its `mu` is `9 + eps`
/// while the best ear decomposition only certifies `9 + 2 eps`.
pub fn figure1(epsilon: f64) -> Result<WeightedGraph> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Invalid(format!("epsilon {epsilon} outside (0, 1)")));
    }
    let labels = (1..=8).map(|i| format!("v{i}")).collect();
    let cycle = [5.0, 2.0, 1.0, 2.0, 3.0, 1.0, 2.0];
    let mut edges: Vec<(usize, usize, f64)> = (0..7).map(|i| (i, (i + 1) % 7, cycle[i])).collect();
    edges.push((0, 7, 3.0 + epsilon));
    edges.push((7, 3, 2.0 + epsilon));
    WeightedGraph::new(labels, edges)
}

/// `n` points drawn uniformly from the unit square.
pub fn random_points(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut r = rng(seed);
    (0..n).map(|_| (r.gen(), r.gen())).collect()
}

/// Complete Euclidean graph on [`random_points`].
pub fn random_euclidean(n: usize, seed: u64) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    let d = DistanceMatrix::from_points(&random_points(n, seed));
    if (0..n).any(|i| (i + 1..n).any(|j| d.get(i, j) <= 0.0)) {
        return Err(Error::Invalid("coincident random points; pick another seed".into()));
    }
    WeightedGraph::complete_from_metric(&d, None)
}

/// Connected graph with `m` edges (clamped to `[n - 1, n(n-1)/2]`): a random
/// spanning tree plus random extra edges, weights uniform in `(0, 1]`.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::Invalid("need n >= 1".into()));
    }
    let mut r = rng(seed);
    let max_edges = n * (n - 1) / 2;
    let m = m.clamp(n - 1, max_edges);
    let mut edges = Vec::with_capacity(m);
    let mut present = vec![false; n * n];
    for v in 1..n {
        let u = r.gen_range(0..v);
        present[u * n + v] = true;
        edges.push((u, v, unit_weight(&mut r)));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !present[i * n + j])
        .collect();
    rest.shuffle(&mut r);
    for (i, j) in rest.into_iter().take(m - edges.len()) {
        edges.push((i, j, unit_weight(&mut r)));
    }
    WeightedGraph::from_edges(n, edges)
}

fn two_edge_connected_edges(
    r: &mut ChaCha8Rng,
    vertices: &[usize],
    extra: usize,
    weight: &mut dyn FnMut(&mut ChaCha8Rng) -> f64,
) -> Vec<(usize, usize, f64)> {
    let n = vertices.len();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let has = |edges: &[(usize, usize, f64)], a: usize, b: usize| {
        edges.iter().any(|&(u, v, _)| (u, v) == (a, b) || (u, v) == (b, a))
    };
    let base = r.gen_range(3..=n);
    for i in 0..base {
        let w = weight(r);
        edges.push((vertices[i], vertices[(i + 1) % base], w));
    }
    let mut next = base;
    while next < n {
        let len = r.gen_range(1..=(n - next).min(3));
        let a = vertices[r.gen_range(0..next)];
        let mut b = vertices[r.gen_range(0..next)];
        while len == 1 && b == a {
            b = vertices[r.gen_range(0..next)];
        }
        let mut prev = a;
        for k in 0..len {
            let w = weight(r);
            edges.push((prev, vertices[next + k], w));
            prev = vertices[next + k];
        }
        let w = weight(r);
        edges.push((prev, b, w));
        next += len;
    }
    for _ in 0..extra {
        let (a, b) = (vertices[r.gen_range(0..n)], vertices[r.gen_range(0..n)]);
        if a != b && !has(&edges, a, b) {
            let w = weight(r);
            edges.push((a, b, w));
        }
    }
    edges
}

/// Bridgeless connected graph: a cycle grown by random ears, then up to
/// `extra` random chords. Weights are uniform in `(0, 1]`, or all 1 when
/// `unit` is set.
pub fn random_two_edge_connected(n: usize, extra: usize, unit: bool, seed: u64) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::Invalid(format!("need n >= 3, got {n}")));
    }
    let mut r = rng(seed);
    let vertices: Vec<usize> = (0..n).collect();
    let mut weight = |r: &mut ChaCha8Rng| if unit { 1.0 } else { unit_weight(r) };
    let edges = two_edge_connected_edges(&mut r, &vertices, extra, &mut weight);
    WeightedGraph::from_edges(n, edges)
}

/// Connected graph with at least one bridge: bridgeless blocks (or single
/// vertices) joined into a tree by bridge edges.
pub fn random_with_bridges(n: usize, seed: u64) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        let left = n - i;
        let size = if left >= 3 && r.gen_bool(0.6) { r.gen_range(3..=left.min(5)) } else { 1 };
        blocks.push(order[i..i + size].to_vec());
        i += size;
    }
    if blocks.len() == 1 {
        let last = blocks[0].pop().unwrap();
        if blocks[0].len() < 3 {
            blocks = blocks[0].iter().map(|&v| vec![v]).collect();
        }
        blocks.push(vec![last]);
    }
    let mut weight = |r: &mut ChaCha8Rng| unit_weight(r);
    let mut edges = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        if block.len() >= 3 {
            edges.extend(two_edge_connected_edges(&mut r, block, 1, &mut weight));
        }
        if b > 0 {
            let parent = &blocks[r.gen_range(0..b)];
            let u = parent[r.gen_range(0..parent.len())];
            let v = block[r.gen_range(0..block.len())];
            edges.push((u, v, unit_weight(&mut r)));
        }
    }
    WeightedGraph::from_edges(n, edges)
}

/// Random metric on `n` points: Euclidean points for even seeds, the
/// shortest-path closure of a random sparse graph for odd seeds.
pub fn random_metric(n: usize, seed: u64) -> Result<DistanceMatrix> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    if seed.is_multiple_of(2) {
        Ok(DistanceMatrix::from_points(&random_points(n, seed)))
    } else {
        let m = rng(seed ^ 0x9e37_79b9).gen_range(n - 1..=n * (n - 1) / 2);
        metric_closure(&random_connected(n, m, seed)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_bridges, verify_metric};

    #[test]
    fn fixed_constructions() {
        let g = line_pairs(4, 0.01).unwrap();
        assert_eq!(g.n(), 8);
        assert!((g.weight(0, 1).unwrap() - 0.01).abs() < 1e-12);
        assert_eq!(g.weight(0, 6).unwrap(), 3.0);
        assert!(line_pairs(2, 0.0).is_err());

        let k = unit_complete(5).unwrap();
        assert_eq!(k.edges().len(), 10);
        assert!(k.edges().iter().all(|e| e.w == 1.0));

        let f = figure1(1.0 / 16.0).unwrap();
        assert_eq!(f.n(), 8);
        assert_eq!(f.label(7), "v8");
        assert_eq!(f.total_weight(), 16.0 + 5.125);
        assert_eq!(f.weight(7, 3), Some(2.0625));
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(random_connected(7, 10, 3).unwrap(), random_connected(7, 10, 3).unwrap());
        assert_ne!(random_connected(7, 10, 3).unwrap(), random_connected(7, 10, 4).unwrap());
        assert_eq!(one_two(9, 0.4, 1).unwrap(), one_two(9, 0.4, 1).unwrap());
        assert_eq!(random_points(3, 5), random_points(3, 5));
    }

    #[test]
    fn random_families_have_their_shape() {
        for seed in 0..60 {
            let n = 2 + (seed as usize % 7);
            let g = random_connected(n, 12, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.edges().len() <= 12.max(n - 1));
            assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));

            if n >= 3 {
                let h = random_two_edge_connected(n, 2, seed % 3 == 0, seed).unwrap();
                assert!(h.is_connected() && find_bridges(&h).is_empty());
            }

            let b = random_with_bridges(n, seed).unwrap();
            assert!(b.is_connected() && !find_bridges(&b).is_empty());

            assert!(verify_metric(&random_metric(n, seed).unwrap()).is_empty());
        }
    }
}
