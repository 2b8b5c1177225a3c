//! Minimum-weight perfect matching on metric subsets, maximum-cardinality
//! matching, and an exhaustive oracle for both.

mod blossom;
mod brute;

pub use brute::{brute_force_matching, subset_matching_costs, BRUTE_FORCE_LIMIT};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, WeightedGraph};
use crate::TOL;
use blossom::Blossom;

/// A set of disjoint vertex pairs. Pairs are stored as `(min, max)` and the
/// list is sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub cost: f64,
}

impl Matching {
    pub(crate) fn from_pairs(mut pairs: Vec<(usize, usize)>, cost: f64) -> Self {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        Matching { pairs, cost }
    }

    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }

    /// Checks that the pairs partition `subset` and that `cost` is the sum of
    /// pair distances.
    pub fn is_perfect_on(&self, d: &DistanceMatrix, subset: &[usize]) -> bool {
        let mut covered: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        covered.sort_unstable();
        let mut want = subset.to_vec();
        want.sort_unstable();
        let cost: f64 = self.pairs.iter().map(|&(a, b)| d.get(a, b)).fold(0.0, |acc, x| acc + x);
        covered == want && (cost - self.cost).abs() <= TOL * (1.0 + cost.abs())
    }
}

fn check_subset(d: &DistanceMatrix, subset: &[usize]) -> Result<Vec<usize>> {
    if !subset.len().is_multiple_of(2) {
        return Err(Error::Invalid(format!("subset has odd size {}", subset.len())));
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    if let Some(&v) = s.iter().find(|&&v| v >= d.n()) {
        return Err(Error::Invalid(format!("vertex {v} outside 0..{}", d.n())));
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("subset repeats a vertex".into()));
    }
    Ok(s)
}

/// One blossom run on the complete graph over `vertices` (sorted).
struct Solved {
    vertices: Vec<usize>,
    mate: Vec<usize>,
    cost: f64,
    engine: Option<Blossom>,
    slack_scale: f64,
}

impl Solved {
    fn run(d: &DistanceMatrix, vertices: &[usize]) -> Solved {
        let m = vertices.len();
        if m == 0 {
            return Solved {
                vertices: Vec::new(),
                mate: Vec::new(),
                cost: 0.0,
                engine: None,
                slack_scale: 1.0,
            };
        }
        let top = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .map(|(i, j)| d.get(vertices[i], vertices[j]))
            .fold(0.0, f64::max);
        // maximizing sum(top + 1 - d) over perfect matchings minimizes sum(d)
        let offset = top + 1.0;
        let edges = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, offset - d.get(vertices[i], vertices[j])))
            .collect();
        let mut engine = Blossom::new(m, edges, true);
        let mate: Vec<usize> = engine
            .solve()
            .into_iter()
            .map(|x| x.expect("complete graph on an even vertex set has a perfect matching"))
            .collect();
        let cost = (0..m)
            .filter(|&i| i < mate[i])
            .map(|i| d.get(vertices[i], vertices[mate[i]]))
            .fold(0.0, |acc, x| acc + x);
        Solved {
            vertices: vertices.to_vec(),
            mate,
            cost,
            engine: Some(engine),
            slack_scale: offset,
        }
    }

    fn local(&self, v: usize) -> usize {
        self.vertices.binary_search(&v).unwrap()
    }

    fn partner(&self, v: usize) -> usize {
        self.vertices[self.mate[self.local(v)]]
    }

    /// Whether `(u, v)` is tight under the optimal duals and so may appear in
    /// some optimal matching.
    fn maybe_optimal(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.local(u), self.local(v));
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let m = self.vertices.len();
        // index of pair (i, j) in row-major upper-triangle order
        let k = i * (2 * m - i - 1) / 2 + (j - i - 1);
        let engine = self.engine.as_ref().unwrap();
        engine.full_slack(k) <= 1e-6 * (1.0 + self.slack_scale)
    }
}

/// Cost of a minimum-weight perfect matching of `subset` under `d`.
///
/// Same optimum as [`min_weight_perfect_matching`] without the canonical
/// tie-breaking pass.
pub fn min_weight_perfect_matching_cost(d: &DistanceMatrix, subset: &[usize]) -> Result<f64> {
    let s = check_subset(d, subset)?;
    Ok(Solved::run(d, &s).cost)
}

/// Exact minimum-weight perfect matching of `subset` in the complete graph
/// weighted by `d`.
///
/// Among matchings within [`TOL`] of the optimum, the lexicographically
/// smallest sorted pair list is returned: the smallest remaining vertex is
/// paired with the smallest partner that still admits an optimal completion.
/// Candidate partners are restricted to edges that are tight under the
/// optimal duals, and each is confirmed by re-solving the remainder.
pub fn min_weight_perfect_matching(d: &DistanceMatrix, subset: &[usize]) -> Result<Matching> {
    let mut remaining = check_subset(d, subset)?;
    let mut current = Solved::run(d, &remaining);
    let optimum = current.cost;
    let mut pairs = Vec::with_capacity(remaining.len() / 2);
    let mut fixed = 0.0;
    while !remaining.is_empty() {
        let u = remaining[0];
        let mut partner = current.partner(u);
        let mut next = None;
        for &v in remaining.iter().skip(1).take_while(|&&v| v < partner) {
            if !current.maybe_optimal(u, v) {
                continue;
            }
            let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != u && x != v).collect();
            let sub = Solved::run(d, &rest);
            if fixed + d.get(u, v) + sub.cost <= optimum + TOL {
                partner = v;
                next = Some(sub);
                break;
            }
        }
        pairs.push((u, partner));
        fixed += d.get(u, partner);
        remaining.retain(|&x| x != u && x != partner);
        current = match next {
            Some(sub) => sub,
            None => Solved::run(d, &remaining),
        };
    }
    let cost = pairs.iter().map(|&(a, b)| d.get(a, b)).fold(0.0, |acc, x| acc + x);
    Ok(Matching::from_pairs(pairs, cost))
}

/// Maximum-cardinality matching of `g`, ignoring weights. `cost` holds the
/// cardinality.
pub fn max_cardinality_matching(g: &WeightedGraph) -> Matching {
    let edges = g.edges().iter().map(|e| (e.u, e.v, 1.0)).collect();
    let mate = Blossom::new(g.n(), edges, true).solve();
    let pairs: Vec<(usize, usize)> = mate
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.filter(|&j| i < j).map(|j| (i, j)))
        .collect();
    let card = pairs.len() as f64;
    Matching::from_pairs(pairs, card)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
        DistanceMatrix::from_points(&pts)
    }

    #[test]
    fn single_pair() {
        let d = DistanceMatrix::from_line(&[0.0, 3.5, 9.0]);
        let m = min_weight_perfect_matching(&d, &[2, 0]).unwrap();
        assert_eq!(m.pairs, vec![(0, 2)]);
        assert_eq!(m.cost, 9.0);
    }

    #[test]
    fn line_points() {
        let d = DistanceMatrix::from_line(&[0.0, 1.0, 9.0, 10.0]);
        let m = min_weight_perfect_matching(&d, &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(m.cost, 2.0);
    }

    #[test]
    fn odd_and_empty_subsets() {
        let d = DistanceMatrix::uniform(4, 1.0);
        assert!(matches!(min_weight_perfect_matching(&d, &[0, 1, 2]), Err(Error::Invalid(_))));
        let m = min_weight_perfect_matching(&d, &[]).unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.cost, 0.0);
        assert!(min_weight_perfect_matching(&d, &[0, 0]).is_err());
        assert!(min_weight_perfect_matching(&d, &[0, 7]).is_err());
    }

    #[test]
    fn ties_resolve_to_lexicographically_smallest() {
        // every perfect matching of the unit complete graph is optimal
        let d = DistanceMatrix::uniform(8, 1.0);
        let m = min_weight_perfect_matching(&d, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
        // square corners: both side pairings cost 2, diagonals cost 2*sqrt(2)
        let d = DistanceMatrix::from_points(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let m = min_weight_perfect_matching(&d, &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn canonical_choice_matches_oracle_tie_break() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 2 * rng.gen_range(1..6);
            // integer coordinates on a small grid produce many ties
            let pts: Vec<f64> = (0..n).map(|_| rng.gen_range(0..4) as f64).collect();
            let d = DistanceMatrix::from_line(&pts);
            let all: Vec<usize> = (0..n).collect();
            let fast = min_weight_perfect_matching(&d, &all).unwrap();
            let slow = brute_force_matching(&d, &all).unwrap();
            assert!((fast.cost - slow.cost).abs() <= TOL);
            assert_eq!(fast.pairs, slow.pairs, "{pts:?}");
        }
    }

    #[test]
    fn blossom_matches_bitmask_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4, 6, 8, 10, 12] {
            for _ in 0..10 {
                let d = random_metric(&mut rng, n + 2);
                let subset: Vec<usize> = (0..n + 2).filter(|&v| v != 1 && v != n).collect();
                let m = min_weight_perfect_matching(&d, &subset).unwrap();
                let o = brute_force_matching(&d, &subset).unwrap();
                assert!(m.is_perfect_on(&d, &subset));
                assert!((m.cost - o.cost).abs() <= TOL, "{} vs {}", m.cost, o.cost);
                let c = min_weight_perfect_matching_cost(&d, &subset).unwrap();
                assert!((c - o.cost).abs() <= TOL);
            }
        }
    }

    #[test]
    fn max_cardinality_examples() {
        let tri = WeightedGraph::from_edges(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(max_cardinality_matching(&tri).cardinality(), 1);
        let c6 = WeightedGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6, 1.0))).unwrap();
        let m = max_cardinality_matching(&c6);
        assert_eq!(m.cardinality(), 3);
        assert_eq!(m.cost, 3.0);
        let empty = WeightedGraph::from_edges(4, vec![]).unwrap();
        assert_eq!(max_cardinality_matching(&empty).cardinality(), 0);
        // weights must not matter
        let path = WeightedGraph::from_edges(4, vec![(0, 1, 1.0), (1, 2, 100.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(max_cardinality_matching(&path).cardinality(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adding_a_pair_costs_at_most_its_distance(seed in any::<u64>(), half in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 * half + 2;
            let d = random_metric(&mut rng, n);
            let base: Vec<usize> = (0..2 * half).collect();
            let grown: Vec<usize> = (0..n).collect();
            let a = min_weight_perfect_matching_cost(&d, &base).unwrap();
            let b = min_weight_perfect_matching_cost(&d, &grown).unwrap();
            prop_assert!(b <= a + d.get(n - 2, n - 1) + TOL);
        }

        #[test]
        fn cost_scales_linearly(seed in any::<u64>(), half in 1usize..6, factor in 0.01f64..100.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_metric(&mut rng, 2 * half);
            let all: Vec<usize> = (0..2 * half).collect();
            let a = min_weight_perfect_matching_cost(&d, &all).unwrap();
            let b = min_weight_perfect_matching_cost(&d.scaled(factor), &all).unwrap();
            prop_assert!((b - factor * a).abs() <= 1e-9 * (1.0 + b.abs()));
        }
    }
}
