//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails at the end if any criterion failed.

use tjoin_core::ear::{
    decomposition_bound, dfs_ear_decomposition_from, ear_upper_bound, ear_upper_bound_with, Strategy,
};
use tjoin_core::generators;
use tjoin_core::graph::{contract_bridges, metric_closure, DistanceMatrix, WeightedGraph};
use tjoin_core::greedy::{greedy_ordering, tjoin_bounds, tjoin_bounds_with};
use tjoin_core::knapsack::{ear_max, KnapsackMode};
use tjoin_core::matching::{brute_force_matching, min_weight_perfect_matching, min_weight_perfect_matching_cost};
use tjoin_core::one_two::mu_12;
use tjoin_core::oracle::{brute_force_max_valid_set, brute_force_mu, brute_force_mu_2k, check_formulation_equivalence};
use tjoin_core::report::{bounds_csv, bounds_summary, mu2k_csv, mu2k_rows};
use tjoin_core::tsp::{brute_force_tsp, christofides, tsp_half_upper_bound};
use tjoin_core::{Execution, TOL};

struct Outcome {
    id: u32,
    name: &'static str,
    failures: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new(id: u32, name: &'static str) -> Self {
        Outcome { id, name, failures: Vec::new(), checked: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&self) -> bool {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {} ({} checks)", self.id, self.name, self.checked);
        for f in self.failures.iter().take(5) {
            println!("    {f}");
        }
        self.failures.is_empty()
    }
}

fn closure(g: &WeightedGraph) -> DistanceMatrix {
    metric_closure(g).expect("connected")
}

/// `mu` of a graph's metric closure; a single vertex has only the empty set.
fn mu_of(g: &WeightedGraph) -> f64 {
    if g.n() < 2 {
        0.0
    } else {
        brute_force_mu(&closure(g)).unwrap().value
    }
}

fn figure_one() -> Outcome {
    let mut o = Outcome::new(1, "figure-one gap instance");
    let g = generators::figure1(0.0625).unwrap();
    let d = closure(&g);
    let mu = brute_force_mu(&d).unwrap().value;
    let valid = brute_force_max_valid_set(&g).unwrap().weight;
    o.check(mu == 9.0625, || format!("brute_force_mu = {mu}"));
    o.check(valid == 9.0625, || format!("brute_force_max_valid_set = {valid}"));
    for strategy in [Strategy::Dfs, Strategy::Best] {
        let b = ear_upper_bound(&g, strategy, None).unwrap().bound;
        o.check(b >= 9.0625, || format!("{strategy:?} ear bound {b}"));
    }
    for root in 0..g.n() {
        let dec = dfs_ear_decomposition_from(&g, root).unwrap();
        let (b, _) = decomposition_bound(&dec, None, Execution::Sequential).unwrap();
        o.check(b >= 9.0625, || format!("dfs root {root} ear bound {b}"));
    }
    let complete = WeightedGraph::complete_from_metric(&d, None).unwrap();
    let b = ear_upper_bound(&complete, Strategy::HamiltonianFirst, None).unwrap().bound;
    o.check(b >= 9.0625, || format!("hamiltonian-first on the closure {b}"));
    o
}

fn formulation_equivalence() -> Outcome {
    let mut o = Outcome::new(2, "valid-set and matching formulations agree");
    for seed in 0..50u64 {
        let n = 3 + (seed % 5) as usize;
        let max_m = (n * (n - 1) / 2).min(12);
        let m = n - 1 + (seed as usize * 7) % (max_m - n + 2);
        let g = generators::random_connected(n, m, seed).unwrap();
        let r = check_formulation_equivalence(&g).unwrap();
        let holds = (r.valid_set.weight - r.mu.value).abs() <= TOL
            && (r.odd_matching_cost - r.valid_set.weight).abs() <= TOL;
        o.check(r.holds && holds, || {
            format!("seed {seed}: valid {} mu {} odd {}", r.valid_set.weight, r.mu.value, r.odd_matching_cost)
        });
    }
    o
}

fn metric_instances() -> impl Iterator<Item = (u64, DistanceMatrix)> {
    (0..100u64).map(|seed| {
        let n = 4 + (seed % 7) as usize;
        (seed, generators::random_metric(n, seed).unwrap())
    })
}

fn whole_sandwich() -> Outcome {
    let mut o = Outcome::new(3, "greedy lower <= mu <= harmonic upper");
    for (seed, d) in metric_instances() {
        let b = tjoin_bounds(&d, 0).unwrap();
        let mu = brute_force_mu(&d).unwrap().value;
        o.check(b.lower <= mu + TOL && mu <= b.upper + TOL, || {
            format!("seed {seed}: {} <= {mu} <= {}", b.lower, b.upper)
        });
    }
    o
}

fn per_k_sandwich() -> Outcome {
    let mut o = Outcome::new(4, "mwm prefix <= mu_2k <= 2(1+H_{k-1}) opt_2k");
    for (seed, d) in metric_instances() {
        let b = tjoin_bounds(&d, 0).unwrap();
        for k in 1..=(d.n() / 2).min(4) {
            let p = &b.prefixes[k - 1];
            let mu = brute_force_mu_2k(&d, k).unwrap().value;
            o.check(p.mwm_prefix <= mu + TOL && mu <= p.harmonic_ub + TOL, || {
                format!("seed {seed} k {k}: {} <= {mu} <= {}", p.mwm_prefix, p.harmonic_ub)
            });
        }
    }
    o
}

fn one_two_exactness() -> Outcome {
    let mut o = Outcome::new(5, "(1,2) algorithm is exact");
    for seed in 0..100u64 {
        let n = 4 + (seed % 6) as usize;
        let p1 = [0.1, 0.3, 0.5, 0.7, 0.9][(seed % 5) as usize];
        let inst = generators::one_two(n, p1, seed).unwrap();
        let d = inst.to_distance_matrix();
        let exact = mu_12(&inst).unwrap().value;
        let brute = brute_force_mu(&d).unwrap().value;
        o.check(exact == brute, || format!("seed {seed} n {n}: mu_12 {exact} vs oracle {brute}"));
        if n.is_multiple_of(2) {
            let all: Vec<usize> = (0..n).collect();
            let full = min_weight_perfect_matching_cost(&d, &all).unwrap();
            o.check(exact == full, || format!("seed {seed}: mu_12 {exact} vs mwm(V) {full}"));
        }
    }
    o
}

fn matching_correctness() -> Outcome {
    let mut o = Outcome::new(6, "blossom matching equals the bitmask oracle");
    for seed in 0..200u64 {
        let n = [4, 6, 8, 10, 12][(seed % 5) as usize];
        let d = generators::random_metric(n, seed).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let m = min_weight_perfect_matching(&d, &all).unwrap();
        let oracle = brute_force_matching(&d, &all).unwrap().cost;
        o.check((m.cost - oracle).abs() <= TOL && m.is_perfect_on(&d, &all), || {
            format!("seed {seed} n {n}: blossom {} vs oracle {oracle}", m.cost)
        });
    }
    o
}

fn christofides_ratio() -> Outcome {
    let mut o = Outcome::new(7, "Christofides within 1.5 and TSP/2 >= mu");
    for seed in 0..100u64 {
        let n = 5 + (seed % 5) as usize;
        let d = generators::random_metric(n, seed).unwrap();
        let tour = christofides(&d).unwrap();
        let opt = brute_force_tsp(&d).unwrap().cost;
        o.check(tour.is_valid(&d) && tour.cost <= 1.5 * opt + TOL, || {
            format!("seed {seed}: tour {} vs optimum {opt}", tour.cost)
        });
        let half = tsp_half_upper_bound(&d).unwrap();
        let mu = brute_force_mu(&d).unwrap().value;
        o.check(half >= mu - TOL, || format!("seed {seed}: TSP/2 {half} < mu {mu}"));
    }
    o
}

fn ear_soundness() -> Outcome {
    let mut o = Outcome::new(8, "ear bounds dominate mu; unit ears give floor(|P|/2)");
    for seed in 0..50u64 {
        let n = 3 + (seed % 5) as usize;
        let unit = seed % 3 == 0;
        let g = generators::random_two_edge_connected(n, (seed % 3) as usize, unit, seed).unwrap();
        let d = closure(&g);
        let mu = brute_force_mu(&d).unwrap().value;
        let mut bounds = Vec::new();
        for root in 0..n {
            let dec = dfs_ear_decomposition_from(&g, root).unwrap();
            bounds.push(decomposition_bound(&dec, None, Execution::Sequential).unwrap().0);
            if unit {
                for ear in &dec.ears {
                    let got = ear_max(&ear.edge_weights, KnapsackMode::Exact).unwrap();
                    let want = (ear.len() / 2) as f64;
                    o.check(got == want, || format!("seed {seed}: unit ear of {} edges gives {got}", ear.len()));
                }
            }
        }
        bounds.push(ear_upper_bound(&g, Strategy::Best, None).unwrap().bound);
        if g.is_complete() {
            bounds.push(ear_upper_bound(&g, Strategy::HamiltonianFirst, None).unwrap().bound);
        }
        let complete = WeightedGraph::complete_from_metric(&d, None).unwrap();
        bounds.push(ear_upper_bound(&complete, Strategy::HamiltonianFirst, None).unwrap().bound);
        for b in bounds {
            o.check(b >= mu - TOL, || format!("seed {seed}: ear bound {b} < mu {mu}"));
        }
    }
    o
}

fn bridge_additivity() -> Outcome {
    let mut o = Outcome::new(9, "bridges add their weight to mu");
    for seed in 0..30u64 {
        let n = 2 + (seed % 6) as usize;
        let g = generators::random_with_bridges(n, seed).unwrap();
        let c = contract_bridges(&g).unwrap();
        let whole = mu_of(&g);
        let parts = mu_of(&c.contracted) + c.bridge_weight;
        o.check(!c.bridges.is_empty() && (whole - parts).abs() <= TOL, || {
            format!("seed {seed}: mu {whole} vs contracted + bridges {parts}")
        });
    }
    o
}

fn remark_constructions() -> Outcome {
    let mut o = Outcome::new(10, "unit K10 and the epsilon-paired line");
    let k10 = DistanceMatrix::uniform(10, 1.0);
    let tour = christofides(&k10).unwrap().cost;
    let half = tsp_half_upper_bound(&k10).unwrap();
    o.check(tour == 10.0, || format!("K10 tour {tour}"));
    o.check(half == 5.0, || format!("K10 TSP/2 {half}"));
    for k in 1..=5 {
        let v = brute_force_mu_2k(&k10, k).unwrap().value;
        o.check(v == k as f64, || format!("K10 mu_{} = {v}", 2 * k));
    }

    let line = closure(&generators::line_pairs(4, 0.01).unwrap());
    let all: Vec<usize> = (0..8).collect();
    let full = min_weight_perfect_matching_cost(&line, &all).unwrap();
    let mu8 = brute_force_mu_2k(&line, 4).unwrap().value;
    o.check((full - 0.04).abs() <= TOL, || format!("line full matching {full}"));
    o.check((mu8 - 0.04).abs() <= TOL, || format!("line mu_8 {mu8}"));
    let ord = greedy_ordering(&line, 0).unwrap();
    let opt2 = tjoin_bounds(&line, 0).unwrap().prefixes[0].opt_prefix;
    o.check(ord.order[0] == 0 && (opt2 - 3.01).abs() <= TOL, || format!("opt_2 from vertex 0 is {opt2}"));
    o.check(opt2 > mu8, || format!("opt_2 {opt2} does not exceed mu_8 {mu8}"));
    o
}

fn table_substitutes() -> Outcome {
    let mut o = Outcome::new(11, "table shape, ratio >= 1 and determinism (published tables use private data)");
    for seed in 0..20u64 {
        let n = 4 + (seed % 13) as usize;
        let d = generators::random_metric(n, seed).unwrap();
        let seq = bounds_summary(&d, 0, Some(0.01), Execution::Sequential).unwrap();
        let par = bounds_summary(&d, 0, Some(0.01), Execution::Parallel).unwrap();
        let again = bounds_summary(&d, 0, Some(0.01), Execution::Parallel).unwrap();
        o.check(seq == par && par == again, || format!("seed {seed}: bounds differ across executions"));
        o.check(seq.row.ratio >= 1.0 - TOL, || format!("seed {seed}: bounds ratio {}", seq.row.ratio));
        let csv = bounds_csv(&[seq.row], true);
        o.check(csv.lines().count() == 2 && csv.lines().all(|l| l.split(',').count() == 7), || {
            format!("seed {seed}: bounds table shape {csv:?}")
        });

        let rows = mu2k_rows(&d, 0, 1..=n / 2, Execution::Sequential).unwrap();
        let rows_par = mu2k_rows(&d, 0, 1..=n / 2, Execution::Parallel).unwrap();
        o.check(rows == rows_par, || format!("seed {seed}: mu2k rows differ across executions"));
        for r in &rows {
            o.check(r.ratio >= 1.0 - TOL, || format!("seed {seed}: 2k {} ratio {}", r.size, r.ratio));
        }
        let table = mu2k_csv(&rows);
        o.check(table.lines().count() == n / 2 + 1 && table.lines().all(|l| l.split(',').count() == 6), || {
            format!("seed {seed}: mu2k table shape")
        });
        o.check(
            tjoin_bounds_with(&d, 0, Execution::Sequential).unwrap()
                == tjoin_bounds_with(&d, 0, Execution::Parallel).unwrap(),
            || format!("seed {seed}: tjoin bounds differ across executions"),
        );
    }
    for seed in 0..5u64 {
        let g = generators::random_two_edge_connected(12, 4, false, seed).unwrap();
        let a = ear_upper_bound_with(&g, Strategy::Best, Some(0.05), Execution::Sequential).unwrap();
        let b = ear_upper_bound_with(&g, Strategy::Best, Some(0.05), Execution::Parallel).unwrap();
        o.check(a == b, || format!("seed {seed}: ear bound differs across executions"));
    }
    o
}

#[test]
fn acceptance() {
    let outcomes = [
        figure_one(),
        formulation_equivalence(),
        whole_sandwich(),
        per_k_sandwich(),
        one_two_exactness(),
        matching_correctness(),
        christofides_ratio(),
        ear_soundness(),
        bridge_additivity(),
        remark_constructions(),
        table_substitutes(),
    ];
    let passed: Vec<bool> = outcomes.iter().map(Outcome::report).collect();
    let failed: Vec<u32> = outcomes.iter().zip(&passed).filter(|(_, &p)| !p).map(|(o, _)| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
