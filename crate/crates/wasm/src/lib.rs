//! Browser bindings for the solver demo page.
//!
//! Each operation has a plain Rust form returning a serializable report and a
//! `wasm_bindgen` wrapper that returns the report as JSON.

use dsat::formats::parse_dcnf;
use dsat::gen::{clauses_for_ratio, generate, transition_ratio, GenSpec};
use dsat::propagate::SolverState;
use dsat::{Cnf, Solver, SolverConfig, StateSet, Status};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest generated instance the page may request.
pub const MAX_VARS: usize = 400;

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: &'static str,
    /// 1-based state per variable when SAT.
    pub model: Option<Vec<usize>>,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub learned: u64,
    pub restarts: u64,
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Sat => "SAT",
        Status::Unsat => "UNSAT",
        Status::UnsatUnderAssumptions => "UNSAT_UNDER_ASSUMPTIONS",
        Status::Unknown => "UNKNOWN",
    }
}

fn config(seed: u64) -> SolverConfig {
    SolverConfig {
        seed,
        ..SolverConfig::default()
    }
}

pub fn solve_cnf(cnf: &Cnf, seed: u64) -> Result<SolveReport, String> {
    let mut solver = Solver::new(cnf, config(seed)).map_err(|e| e.to_string())?;
    let r = solver.solve();
    Ok(SolveReport {
        status: status_name(r.status),
        model: r.model.map(|w| w.0.iter().map(|s| s + 1).collect()),
        decisions: r.stats.decisions,
        conflicts: r.stats.conflicts,
        propagations: r.stats.propagations,
        learned: r.stats.learned,
        restarts: r.stats.restarts,
    })
}

pub fn solve_text(dcnf: &str, seed: u64) -> Result<SolveReport, String> {
    solve_cnf(&parse_dcnf(dcnf).map_err(|e| e.to_string())?, seed)
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub ratio: f64,
    pub m: usize,
    pub count: usize,
    pub sat_fraction: f64,
    pub mean_decisions: f64,
}

fn check_size(n: usize, c: usize) -> Result<(), String> {
    if n > MAX_VARS || c > 64 {
        return Err(format!("demo limits are N ≤ {MAX_VARS} and C ≤ 64"));
    }
    Ok(())
}

/// Solves `count` random instances at one clause/variable ratio.
pub fn phase_point(c: usize, n: usize, ratio: f64, count: usize, seed_base: u64) -> Result<CurvePoint, String> {
    check_size(n, c)?;
    let m = clauses_for_ratio(ratio, n);
    let (mut sat, mut decisions) = (0, 0u64);
    for k in 0..count as u64 {
        let cnf = generate(&GenSpec {
            n,
            m,
            c,
            seed: seed_base + k,
        })
        .map_err(|e| e.to_string())?;
        let r = solve_cnf(&cnf, 0)?;
        sat += (r.status == "SAT") as usize;
        decisions += r.decisions;
    }
    let per = |x: f64| if count == 0 { 0.0 } else { x / count as f64 };
    Ok(CurvePoint {
        ratio,
        m,
        count,
        sat_fraction: per(sat as f64),
        mean_decisions: per(decisions as f64),
    })
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct PropagationStep {
    pub label: String,
    /// Active states of every variable, 1-based.
    pub active: Vec<Vec<usize>>,
    pub conflict: bool,
    pub skipped: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct PropagationTrace {
    pub cards: Vec<usize>,
    pub steps: Vec<PropagationStep>,
}

fn snapshot(s: &SolverState, label: String, conflict: bool, skipped: bool) -> PropagationStep {
    PropagationStep {
        label,
        active: s.vars.iter().map(|v| v.astates.iter().map(|x| x + 1).collect()).collect(),
        conflict,
        skipped,
    }
}

/// Parses `var:s1,s2` with 1-based numbers.
fn parse_decision(tok: &str, cards: &[usize]) -> Result<(usize, StateSet), String> {
    let err = || format!("bad decision '{tok}', expected var:states such as 2:1,3");
    let (v, states) = tok.split_once(':').ok_or_else(err)?;
    let v: usize = v.trim().parse().map_err(|_| err())?;
    if v == 0 || v > cards.len() {
        return Err(format!("decision '{tok}' names an unknown variable"));
    }
    let card = cards[v - 1];
    let mut set = StateSet::empty(card);
    for s in states.split(',') {
        let s: usize = s.trim().parse().map_err(|_| err())?;
        if s == 0 || s > card {
            return Err(format!("decision '{tok}' names a state outside 1..{card}"));
        }
        set.insert(s - 1);
    }
    Ok((v - 1, set))
}

/// Level-0 unit propagation, then each decision in turn, reporting the
/// active states after every step. Stops at the first contradiction.
pub fn propagation_trace(dcnf: &str, decisions: &str) -> Result<PropagationTrace, String> {
    let cnf = parse_dcnf(dcnf).map_err(|e| e.to_string())?;
    let planned = decisions
        .split_whitespace()
        .map(|t| parse_decision(t, &cnf.cards))
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = SolverState::from_cnf(&cnf).map_err(|e| e.to_string())?;
    let ok = !s.has_empty_clause && s.assert_unit_clauses();
    let mut steps = vec![snapshot(&s, "unit clauses at level 0".into(), !ok, false)];
    if ok {
        decide_all(&mut s, planned, &mut steps);
    }
    Ok(PropagationTrace { cards: cnf.cards, steps })
}

fn decide_all(s: &mut SolverState, planned: Vec<(usize, StateSet)>, steps: &mut Vec<PropagationStep>) {
    for (v, set) in planned {
        let label = format!("decide x{}{:?}", v + 1, set);
        if s.implied_states(v, &set) || s.falsified_states(v, &set) {
            let why = if s.implied_states(v, &set) {
                "already implied"
            } else {
                "already falsified"
            };
            steps.push(snapshot(s, format!("{label}: {why}"), false, true));
            continue;
        }
        let ok = s.decide(v, &set);
        steps.push(snapshot(s, label, !ok, false));
        if !ok {
            break;
        }
    }
}

pub fn generate_text(n: usize, c: usize, ratio: f64, seed: u64) -> Result<String, String> {
    check_size(n, c)?;
    let cnf = generate(&GenSpec {
        n,
        m: clauses_for_ratio(ratio, n),
        c,
        seed,
    })
    .map_err(|e| e.to_string())?;
    Ok(dsat::formats::write_dcnf(&cnf))
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn solve(dcnf: &str, seed: u64) -> Result<String, JsError> {
    to_js(solve_text(dcnf, seed))
}

#[wasm_bindgen]
pub fn phase(c: usize, n: usize, ratio: f64, count: usize, seed_base: u64) -> Result<String, JsError> {
    to_js(phase_point(c, n, ratio, count, seed_base))
}

#[wasm_bindgen]
pub fn propagate(dcnf: &str, decisions: &str) -> Result<String, JsError> {
    to_js(propagation_trace(dcnf, decisions))
}

#[wasm_bindgen]
pub fn random_instance(n: usize, c: usize, ratio: f64, seed: u64) -> Result<String, JsError> {
    generate_text(n, c, ratio, seed).map_err(|e| JsError::new(&e))
}

/// Transition ratio for `c`, or NaN when none is known.
#[wasm_bindgen]
pub fn transition(c: usize) -> f64 {
    transition_ratio(c).unwrap_or(f64::NAN)
}
