use super::{check_subset, Matching};
use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// Largest subset the bitmask oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Minimum perfect-matching cost of every even vertex mask over `vertices`,
/// indexed by mask (odd masks hold `NaN`). Bit `i` stands for `vertices[i]`.
pub fn subset_matching_costs(d: &DistanceMatrix, vertices: &[usize]) -> Vec<f64> {
    let m = vertices.len();
    let mut cost = vec![f64::NAN; 1 << m];
    cost[0] = 0.0;
    for mask in 1usize..1 << m {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut best = f64::INFINITY;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = d.get(vertices[i], vertices[j]) + cost[rest & !(1 << j)];
            if c < best {
                best = c;
            }
        }
        cost[mask] = best;
    }
    cost
}

/// Exact minimum-weight perfect matching by dynamic programming over
/// subsets. Exact ties resolve to the lexicographically smallest pair list.
pub fn brute_force_matching(d: &DistanceMatrix, subset: &[usize]) -> Result<Matching> {
    if subset.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force matching subset",
            limit: BRUTE_FORCE_LIMIT,
            got: subset.len(),
        });
    }
    let s = check_subset(d, subset)?;
    let cost = subset_matching_costs(d, &s);
    let mut mask = (1usize << s.len()) - 1;
    let mut pairs = Vec::new();
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut best = (f64::INFINITY, usize::MAX);
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let c = d.get(s[i], s[j]) + cost[rest & !(1 << j)];
            if c < best.0 {
                best = (c, j);
            }
        }
        pairs.push((s[i], s[best.1]));
        mask = rest & !(1 << best.1);
    }
    Ok(Matching::from_pairs(pairs, cost[(1usize << s.len()) - 1]))
}
