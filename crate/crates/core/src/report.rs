//! Bound tables: row construction and CSV / Markdown rendering.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::ear::{decomposition_bound, hamiltonian_first_decomposition};
use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::greedy::{harmonic_factor, tjoin_bounds_with, TJoinBounds};
use crate::parallel::Execution;
use crate::tsp::{christofides, Tour};

/// One table row. `size` is `n` for whole-instance rows and `2k` for
/// per-`k` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReportRow {
    pub size: usize,
    pub lower: f64,
    /// `opt_2k`, present on per-`k` rows.
    pub opt: Option<f64>,
    pub harmonic_ub: Option<f64>,
    pub tsp_ub: Option<f64>,
    pub ear_ub: Option<f64>,
    /// `min_upper() / lower`.
    pub ratio: f64,
}

impl BoundReportRow {
    pub fn new(
        size: usize,
        lower: f64,
        opt: Option<f64>,
        harmonic_ub: Option<f64>,
        tsp_ub: Option<f64>,
        ear_ub: Option<f64>,
    ) -> Self {
        let mut row = BoundReportRow { size, lower, opt, harmonic_ub, tsp_ub, ear_ub, ratio: f64::NAN };
        row.ratio = row.min_upper() / lower;
        row
    }

    /// Smallest upper bound present (`+inf` if none).
    pub fn min_upper(&self) -> f64 {
        [self.harmonic_ub, self.tsp_ub, self.ear_ub]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Everything computed for the whole-instance row.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsSummary {
    pub row: BoundReportRow,
    pub bounds: TJoinBounds,
    pub tour: Option<Tour>,
}

/// Lower bound from the greedy prefixes; upper bound the minimum of the
/// harmonic bound, half the Christofides tour, and the Hamiltonian-first ear
/// bound on the same tour. The last two need `n >= 3`. `ear_epsilon` is
/// used for tours longer than the exact knapsack limit.
pub fn bounds_summary(
    d: &DistanceMatrix,
    start: usize,
    ear_epsilon: Option<f64>,
    exec: Execution,
) -> Result<BoundsSummary> {
    let bounds = tjoin_bounds_with(d, start, exec)?;
    let (tour, tsp_ub, ear_ub) = if d.n() >= 3 {
        let tour = christofides(d)?;
        let dec = hamiltonian_first_decomposition(d, &tour)?;
        let (ear, _) = decomposition_bound(&dec, ear_epsilon, exec)?;
        let half = tour.cost / 2.0;
        (Some(tour), Some(half), Some(ear))
    } else {
        (None, None, None)
    };
    let row = BoundReportRow::new(d.n(), bounds.lower, None, Some(bounds.upper), tsp_ub, ear_ub);
    Ok(BoundsSummary { row, bounds, tour })
}

/// One row per `k` in `ks`: `mwm(v_1..v_2k)`, `opt_2k`, the harmonic bound
/// and half the Christofides tour over all vertices.
pub fn mu2k_rows(
    d: &DistanceMatrix,
    start: usize,
    ks: RangeInclusive<usize>,
    exec: Execution,
) -> Result<Vec<BoundReportRow>> {
    let half = d.n() / 2;
    if ks.is_empty() || *ks.start() == 0 || *ks.end() > half {
        return Err(Error::Invalid(format!(
            "k range {}..={} must lie within 1..={half}",
            ks.start(),
            ks.end()
        )));
    }
    let bounds = tjoin_bounds_with(d, start, exec)?;
    let tsp_ub = if d.n() >= 3 { Some(christofides(d)?.cost / 2.0) } else { None };
    Ok(bounds.prefixes[*ks.start() - 1..*ks.end()]
        .iter()
        .map(|p| {
            debug_assert_eq!(p.harmonic_ub, harmonic_factor(p.k) * p.opt_prefix);
            BoundReportRow::new(2 * p.k, p.mwm_prefix, Some(p.opt_prefix), Some(p.harmonic_ub), tsp_ub, None)
        })
        .collect())
}

fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn opt_num(x: Option<f64>, missing: &str) -> String {
    x.map_or_else(|| missing.to_string(), num)
}

pub fn bounds_csv(rows: &[BoundReportRow], detail: bool) -> String {
    let mut out = String::new();
    if detail {
        out.push_str("n,LB,harmonicUB,tspUB,earUB,UB,ratio\n");
    } else {
        out.push_str("n,LB,UB,ratio\n");
    }
    for r in rows {
        if detail {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.size,
                num(r.lower),
                opt_num(r.harmonic_ub, ""),
                opt_num(r.tsp_ub, ""),
                opt_num(r.ear_ub, ""),
                num(r.min_upper()),
                num(r.ratio)
            );
        } else {
            let _ = writeln!(out, "{},{},{},{}", r.size, num(r.lower), num(r.min_upper()), num(r.ratio));
        }
    }
    out
}

pub fn bounds_markdown(rows: &[BoundReportRow]) -> String {
    let mut out = String::from("| n | LB | UB | UB/LB |\n|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(out, "| {} | {} | {} | {} |", r.size, num(r.lower), num(r.min_upper()), num(r.ratio));
    }
    out
}

pub fn mu2k_csv(rows: &[BoundReportRow]) -> String {
    let mut out = String::from("2k,mwm,opt,harmonicUB,tspUB,ratio\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.size,
            num(r.lower),
            opt_num(r.opt, ""),
            opt_num(r.harmonic_ub, ""),
            opt_num(r.tsp_ub, ""),
            num(r.ratio)
        );
    }
    out
}

pub fn mu2k_markdown(rows: &[BoundReportRow]) -> String {
    let mut out = String::from(
        "| 2k | mwm(v_1..v_2k) | opt_2k | 2(1+H_{k-1}) opt_2k | TSP/2 | UB/LB |\n|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.size,
            num(r.lower),
            opt_num(r.opt, "-"),
            opt_num(r.harmonic_ub, "-"),
            opt_num(r.tsp_ub, "-"),
            num(r.ratio)
        );
    }
    out
}
