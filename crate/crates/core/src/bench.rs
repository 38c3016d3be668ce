//! Batch runs over generated instances with CSV output.
//!
//! A spec file lists one group per line as `C N M count seed_base`; blank
//! lines and `#` comments are ignored. Instance `k` of a group uses seed
//! `seed_base + k`.

use crate::gen::{generate, GenError, GenSpec};
use crate::solver::{Solver, SolverConfig, Status};
use rayon::prelude::*;
use std::fmt::Write;
use std::time::Instant;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchGroup {
    pub c: usize,
    pub n: usize,
    pub m: usize,
    pub count: usize,
    pub seed_base: u64,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("line {line}: expected 'C N M count seed_base', got '{text}'")]
    Syntax { line: usize, text: String },
    #[error("line {line}: {source}")]
    Spec { line: usize, source: GenError },
}

pub fn parse_bench_spec(text: &str) -> Result<Vec<BenchGroup>, BenchError> {
    let mut groups = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = || BenchError::Syntax {
            line: i + 1,
            text: raw.to_string(),
        };
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let [c, n, m, count, seed_base] = nums[..] else {
            return Err(err());
        };
        let g = BenchGroup {
            c: c as usize,
            n: n as usize,
            m: m as usize,
            count: count as usize,
            seed_base,
        };
        // reject bad parameters before any solving starts
        generate(&GenSpec {
            n: g.n,
            m: 0,
            c: g.c,
            seed: 0,
        })
        .map_err(|source| BenchError::Spec { line: i + 1, source })?;
        groups.push(g);
    }
    Ok(groups)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance_id: usize,
    pub group: usize,
    pub c: usize,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub status: Status,
    pub time_ms: f64,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub learned: u64,
    pub restarts: u64,
}

/// Solves every instance, in parallel, returning rows in instance order.
pub fn run_bench(groups: &[BenchGroup], config: &SolverConfig) -> Vec<BenchRow> {
    let jobs: Vec<(usize, usize, GenSpec)> = groups
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| {
            (0..g.count).map(move |k| {
                (
                    gi,
                    k,
                    GenSpec {
                        n: g.n,
                        m: g.m,
                        c: g.c,
                        seed: g.seed_base.wrapping_add(k as u64),
                    },
                )
            })
        })
        .collect();
    jobs.par_iter()
        .enumerate()
        .map(|(id, &(gi, _, spec))| {
            let cnf = generate(&spec).expect("groups are validated");
            let start = Instant::now();
            let mut solver = Solver::new(&cnf, config.clone()).expect("generated CNF is valid");
            let r = solver.solve();
            let time_ms = start.elapsed().as_secs_f64() * 1000.0;
            BenchRow {
                instance_id: id,
                group: gi,
                c: spec.c,
                n: spec.n,
                m: spec.m,
                seed: spec.seed,
                status: r.status,
                time_ms,
                decisions: r.stats.decisions,
                conflicts: r.stats.conflicts,
                propagations: r.stats.propagations,
                learned: r.stats.learned,
                restarts: r.stats.restarts,
            }
        })
        .collect()
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Sat => "SAT",
        Status::Unsat => "UNSAT",
        Status::UnsatUnderAssumptions => "UNSAT_UNDER_ASSUMPTIONS",
        Status::Unknown => "TIMEOUT",
    }
}

/// Geometric mean of the positive values, if there are any.
pub fn geometric_mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .filter(|&v| v > 0.0)
        .fold((0.0, 0usize), |(s, n), v| (s + v.ln(), n + 1));
    (n > 0).then(|| (sum / n as f64).exp())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:.3}"))
}

pub const CSV_HEADER: &str = "instance_id,C,N,M,seed,status,time_ms,decisions,conflicts,propagations,learned,restarts";
pub const SUMMARY_HEADER: &str = "summary,C,N,M,count,sat_fraction,timeouts,\
gm_time_ms_sat,gm_time_ms_unsat,gm_time_ms_all,gm_decisions_sat,gm_decisions_unsat,gm_decisions_all";

/// Instance rows, then a blank line and one summary row per group.
pub fn write_csv(groups: &[BenchGroup], rows: &[BenchRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{},{},{},{},{}",
            r.instance_id,
            r.c,
            r.n,
            r.m,
            r.seed,
            status_name(r.status),
            r.time_ms,
            r.decisions,
            r.conflicts,
            r.propagations,
            r.learned,
            r.restarts
        )
        .unwrap();
    }
    out.push('\n');
    writeln!(out, "{SUMMARY_HEADER}").unwrap();
    for (gi, g) in groups.iter().enumerate() {
        let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.group == gi).collect();
        let sat = mine.iter().filter(|r| r.status == Status::Sat).count();
        let timeouts = mine.iter().filter(|r| r.status == Status::Unknown).count();
        let gm = |pick: &dyn Fn(&BenchRow) -> f64, want: Option<Status>| {
            geometric_mean(mine.iter().filter(|r| want.is_none_or(|s| r.status == s)).map(|r| pick(r)))
        };
        let time = |r: &BenchRow| r.time_ms;
        let dec = |r: &BenchRow| r.decisions as f64;
        let frac = if mine.is_empty() { 0.0 } else { sat as f64 / mine.len() as f64 };
        writeln!(
            out,
            "group{},{},{},{},{},{:.4},{},{},{},{},{},{},{}",
            gi,
            g.c,
            g.n,
            g.m,
            mine.len(),
            frac,
            timeouts,
            fmt_opt(gm(&time, Some(Status::Sat))),
            fmt_opt(gm(&time, Some(Status::Unsat))),
            fmt_opt(gm(&time, None)),
            fmt_opt(gm(&dec, Some(Status::Sat))),
            fmt_opt(gm(&dec, Some(Status::Unsat))),
            fmt_opt(gm(&dec, None)),
        )
        .unwrap();
    }
    out
}
