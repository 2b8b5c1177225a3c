use std::fmt::Write as _;
use std::io::Read as _;
use std::ops::RangeInclusive;

use tjoin_core::ear::{ear_upper_bound_with, Chosen, Strategy};
use tjoin_core::graph::{load_edge_list, load_similarity_list, metric_closure, similarity_to_distance};
use tjoin_core::one_two::{mu_12_with, validate_one_two};
use tjoin_core::oracle::{brute_force_max_valid_set_with, brute_force_mu, brute_force_mu_2k, check_formulation_equivalence};
use tjoin_core::report::{bounds_csv, bounds_markdown, bounds_summary, mu2k_csv, mu2k_markdown, mu2k_rows};
use tjoin_core::tsp::{brute_force_tsp, christofides};
use tjoin_core::{generators, DistanceMatrix, Error, Execution, WeightedGraph};

use crate::{Cli, Command, Format, GenFamily, Input, OracleQuery, StrategyArg};

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { 2 } else { 3 };
        CliError { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

type CliResult<T> = Result<T, CliError>;

fn ok(text: String) -> CliResult<Output> {
    Ok(Output { text, code: 0 })
}

fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn load(input: &Input) -> CliResult<WeightedGraph> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| input_error(format!("cannot read {}: {e}", input.file.display())))?
    };
    let g = if input.similarity {
        similarity_to_distance(&load_similarity_list(&text)?)?
    } else {
        load_edge_list(&text)?
    };
    if g.n() == 0 {
        return Err(input_error("input has no edges"));
    }
    Ok(g)
}

fn load_metric(input: &Input) -> CliResult<(WeightedGraph, DistanceMatrix)> {
    let g = load(input)?;
    let d = metric_closure(&g)?;
    Ok((g, d))
}

fn start_vertex(g: &WeightedGraph, start: Option<&str>) -> CliResult<usize> {
    match start {
        None => Ok(0),
        Some(label) => g
            .vertex(label)
            .ok_or_else(|| input_error(format!("unknown start vertex `{label}`"))),
    }
}

fn check_epsilon(eps: f64) -> CliResult<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(input_error(format!("epsilon {eps} outside (0, 1)")))
    }
}

fn parse_k_range(text: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || input_error(format!("bad k range `{text}`; use `a..b`, `a-b` or `k`"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..=").or_else(|| text.split_once("..")) {
        Ok(parse(a)?..=parse(b)?)
    } else if let Some((a, b)) = text.split_once('-') {
        Ok(parse(a)?..=parse(b)?)
    } else {
        let k = parse(text)?;
        Ok(k..=k)
    }
}

fn labels_of(g: &WeightedGraph, vertices: &[usize]) -> String {
    vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ")
}

fn pairs_of(g: &WeightedGraph, pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|&(a, b)| format!("{}-{}", g.label(a), g.label(b)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: Cli) -> CliResult<Output> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Bounds { input, start, format, detail, epsilon } => {
            check_epsilon(epsilon)?;
            let (g, d) = load_metric(&input)?;
            let s = bounds_summary(&d, start_vertex(&g, start.as_deref())?, Some(epsilon), exec)?;
            let rows = [s.row];
            ok(match format {
                Format::Csv => bounds_csv(&rows, detail),
                Format::Md => bounds_markdown(&rows),
            })
        }
        Command::Mu2k { input, start, k_range, format } => {
            let (g, d) = load_metric(&input)?;
            let ks = match k_range {
                Some(text) => parse_k_range(&text)?,
                None => 1..=d.n() / 2,
            };
            let rows = mu2k_rows(&d, start_vertex(&g, start.as_deref())?, ks, exec)?;
            ok(match format {
                Format::Csv => mu2k_csv(&rows),
                Format::Md => mu2k_markdown(&rows),
            })
        }
        Command::Ear { input, strategy, epsilon, show_ears } => {
            if let Some(eps) = epsilon {
                check_epsilon(eps)?;
            }
            let g = load(&input)?;
            let strategy = match strategy {
                StrategyArg::Dfs => Strategy::Dfs,
                StrategyArg::HamiltonianFirst => Strategy::HamiltonianFirst,
                StrategyArg::Best => Strategy::Best,
            };
            let b = ear_upper_bound_with(&g, strategy, epsilon, exec)?;
            let h = &b.contracted;
            let chosen = match b.chosen {
                Chosen::Dfs { root } => format!("dfs from {}", h.label(root)),
                Chosen::HamiltonianFirst => "hamiltonian-first".to_string(),
            };
            let mut out = String::new();
            let _ = writeln!(out, "upper_bound,{}", num(b.bound));
            let _ = writeln!(out, "bridge_weight,{}", num(b.bridge_weight));
            let _ = writeln!(out, "decomposition,{chosen}");
            let _ = writeln!(out, "ears,{}", b.decomposition.ears.len());
            if show_ears {
                out.push_str(&b.decomposition.to_text(h.labels()));
            }
            ok(out)
        }
        Command::Tsp { input, exact } => {
            let (g, d) = load_metric(&input)?;
            let tour = christofides(&d)?;
            let mut out = String::new();
            let _ = writeln!(out, "tour,{}", labels_of(&g, &tour.order));
            let _ = writeln!(out, "cost,{}", num(tour.cost));
            let _ = writeln!(out, "half,{}", num(tour.cost / 2.0));
            if exact {
                let opt = brute_force_tsp(&d)?;
                let _ = writeln!(out, "optimal_tour,{}", labels_of(&g, &opt.order));
                let _ = writeln!(out, "optimal_cost,{}", num(opt.cost));
                let _ = writeln!(out, "ratio,{}", num(tour.cost / opt.cost));
            }
            ok(out)
        }
        Command::Exact12 { input } => {
            let g = load(&input)?;
            let inst = validate_one_two(&g)?;
            let s = mu_12_with(&inst, exec)?;
            let mut out = String::new();
            let _ = writeln!(out, "mu,{}", num(s.value));
            let _ = writeln!(out, "witness,{}", labels_of(&g, &s.witness));
            let _ = writeln!(out, "removed,{}", s.removed.map_or("-", |r| g.label(r)));
            let _ = writeln!(out, "weight_one_matching,{}", pairs_of(&g, &s.weight_one_matching));
            ok(out)
        }
        Command::Oracle { query } => oracle(query, exec),
        Command::Gen { family } => generate(family),
    }
}

fn oracle(query: OracleQuery, exec: Execution) -> CliResult<Output> {
    let mut out = String::new();
    match query {
        OracleQuery::Mu { input } => {
            let (g, d) = load_metric(&input)?;
            let m = brute_force_mu(&d)?;
            let _ = writeln!(out, "mu,{}", num(m.value));
            let _ = writeln!(out, "subset,{}", labels_of(&g, &m.subset));
        }
        OracleQuery::Mu2k { input, k } => {
            let (g, d) = load_metric(&input)?;
            let m = brute_force_mu_2k(&d, k)?;
            let _ = writeln!(out, "mu2k,{}", num(m.value));
            let _ = writeln!(out, "k,{k}");
            let _ = writeln!(out, "subset,{}", labels_of(&g, &m.subset));
        }
        OracleQuery::ValidSet { input } => {
            let g = load(&input)?;
            let s = brute_force_max_valid_set_with(&g, exec)?;
            let edges: Vec<(usize, usize)> = s.edges.iter().map(|&e| (g.edges()[e].u, g.edges()[e].v)).collect();
            let _ = writeln!(out, "weight,{}", num(s.weight));
            let _ = writeln!(out, "edges,{}", pairs_of(&g, &edges));
            let _ = writeln!(out, "odd_vertices,{}", labels_of(&g, &s.odd_vertices));
        }
        OracleQuery::Equivalence { input } => {
            let g = load(&input)?;
            let r = check_formulation_equivalence(&g)?;
            let _ = writeln!(out, "max_valid_set,{}", num(r.valid_set.weight));
            let _ = writeln!(out, "mu,{}", num(r.mu.value));
            let _ = writeln!(out, "odd_vertex_matching,{}", num(r.odd_matching_cost));
            out.push_str(if r.holds { "PASS\n" } else { "FAIL\n" });
            return Ok(Output { text: out, code: if r.holds { 0 } else { 1 } });
        }
    }
    ok(out)
}

fn generate(family: GenFamily) -> CliResult<Output> {
    let g = match family {
        GenFamily::Line { pairs, epsilon } => generators::line_pairs(pairs, epsilon)?,
        GenFamily::UnitComplete { n } => generators::unit_complete(n)?,
        GenFamily::OneTwo { n, p1, seed } => generators::one_two(n, p1, seed)?.to_graph(),
        GenFamily::Figure1 { epsilon } => generators::figure1(epsilon)?,
        GenFamily::Points { n, seed } => generators::random_euclidean(n, seed)?,
        GenFamily::Connected { n, m, seed } => generators::random_connected(n, m, seed)?,
    };
    ok(g.to_edge_list())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("1..3").ok(), Some(1..=3));
        assert_eq!(parse_k_range("1..=3").ok(), Some(1..=3));
        assert_eq!(parse_k_range("2-4").ok(), Some(2..=4));
        assert_eq!(parse_k_range("5").ok(), Some(5..=5));
        assert!(parse_k_range("x").is_err());
    }
}
