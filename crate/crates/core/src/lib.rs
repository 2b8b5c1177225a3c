//! Lower bounds, upper bounds and exact values for the weighted max-min
//! T-join problem `mu(G)` and the max-min 2k-matching problem `mu_2k(G)`.
//!
//! The pipeline: load a weighted graph, take its shortest-path metric, order
//! the vertices farthest-first, and bracket `mu` between the best prefix
//! matching and the smaller of a harmonic-factor bound, half a Christofides
//! tour, and an ear-decomposition bound. Complete graphs with weights in
//! `{1, 2}` are solved exactly. Everything is certified against brute force
//! on small instances by the [`oracle`] module.

pub mod ear;
pub mod error;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod knapsack;
pub mod matching;
pub mod one_two;
pub mod oracle;
pub mod parallel;
pub mod report;
pub mod tsp;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, WeightedGraph};
pub use parallel::Execution;

/// Absolute tolerance for every floating-point comparison in the crate.
pub const TOL: f64 = 1e-9;
