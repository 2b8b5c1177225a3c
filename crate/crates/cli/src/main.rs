//! `tjoin`: bounds and exact values for max-min T-join instances.
//!
//! Exit codes: 0 success, 1 a self-check reported FAIL, 2 input error,
//! 3 instance outside what the requested routine accepts.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "tjoin", version, about = "Bounds for the weighted max-min T-join problem")]
struct Cli {
    /// Run every batch loop on the calling thread
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list file (`u,v,w` per line); `-` reads standard input
    file: PathBuf,
    /// Third column holds co-occurrence counts c, mapped to 1/(c+1)
    #[arg(long)]
    similarity: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Dfs,
    HamiltonianFirst,
    Best,
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper bounds on mu for the whole instance
    Bounds {
        #[command(flatten)]
        input: Input,
        /// Label of the first vertex of the greedy ordering
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also print every upper bound separately
        #[arg(long)]
        detail: bool,
        /// Knapsack approximation for tours longer than the exact limit
        #[arg(long, default_value = "0.01")]
        epsilon: f64,
    },
    /// Per-k bounds on mu_2k along the greedy ordering
    Mu2k {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        start: Option<String>,
        /// Range of k, e.g. `1..5`, `2-4` or `3` (default: all)
        #[arg(long)]
        k_range: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Ear-decomposition upper bound on mu of the graph itself
    Ear {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "best")]
        strategy: StrategyArg,
        /// Allow approximate knapsack on ears longer than the exact limit
        #[arg(long)]
        epsilon: Option<f64>,
        /// Print the chosen decomposition, one ear per line
        #[arg(long)]
        show_ears: bool,
    },
    /// Christofides tour on the metric closure
    Tsp {
        #[command(flatten)]
        input: Input,
        /// Also compute the optimal tour by enumeration (n <= 10)
        #[arg(long)]
        exact: bool,
    },
    /// Exact mu of a complete graph with weights in {1, 2}
    Exact12 {
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive reference computations on small instances
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Write a generated instance as an edge list
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// mu of the metric closure (n <= 12)
    Mu {
        #[command(flatten)]
        input: Input,
    },
    /// mu_2k of the metric closure (n <= 12)
    Mu2k {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Maximum-weight valid edge set (at most 16 edges)
    ValidSet {
        #[command(flatten)]
        input: Input,
    },
    /// Compare the valid-set and matching formulations
    Equivalence {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Points i and i + epsilon on a line, for i < pairs
    Line {
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        epsilon: f64,
    },
    /// Complete graph with unit weights
    UnitComplete {
        #[arg(long)]
        n: usize,
    },
    /// Complete graph with weights 1 (probability p1) or 2
    OneTwo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        seed: u64,
    },
    /// The eight-vertex ear-bound gap example
    Figure1 {
        #[arg(long)]
        epsilon: f64,
    },
    /// Complete Euclidean graph on random points in the unit square
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Random connected graph with weights in (0, 1]
    Connected {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("tjoin: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
