//! The CDCL loop and an incremental add/assume/solve/value interface.

use crate::gen::Rng;
use crate::heuristics::{ReduceDbPolicy, RestartPolicy};
use crate::learn::LearnResult;
use crate::logic::{evaluate, normalize_clause, Clause, Cnf, Literal, LogicError, Normalized, World};
use crate::propagate::{LitId, SolverState, Stats};
use crate::stateset::StateSet;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Share of the active score mass a decision may take.
    pub threshold: f64,
    pub bump_inc: f64,
    pub restart_margin: f64,
    pub restarts: bool,
    pub reduce: bool,
    pub minimize: bool,
    /// Nonzero seeds add a tiny random offset to the initial variable
    /// scores, which shuffles the early decision order.
    pub seed: u64,
    pub time_limit: Option<Duration>,
    /// Keep a copy of every learned clause (see [`Solver::learned_log`]).
    pub record_learned: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            threshold: 0.30,
            bump_inc: 1.05,
            restart_margin: 0.8,
            restarts: true,
            reduce: true,
            minimize: false,
            seed: 0,
            time_limit: None,
            record_learned: false,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    UnsatUnderAssumptions,
    /// The time limit ran out.
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<World>,
    pub stats: Stats,
}

/// A learned clause as seen at the moment it was derived.
#[derive(Clone, Debug)]
pub struct LearnedClause {
    pub clause: Clause,
    /// Literals with a state pruned at the conflict level.
    pub at_conflict_level: usize,
    pub conflict_level: u32,
    pub assertion_level: u32,
    pub lbd: u32,
}

enum Search {
    Done(Status),
    Continue,
}

pub struct Solver {
    state: SolverState,
    cnf: Cnf,
    config: SolverConfig,
    restart: RestartPolicy,
    reduce: ReduceDbPolicy,
    unsat: bool,
    assumptions: Vec<Literal>,
    last: Option<SolveResult>,
    learned_log: Vec<LearnedClause>,
    deadline: Option<Instant>,
}

impl Solver {
    pub fn new(cnf: &Cnf, config: SolverConfig) -> Result<Solver, LogicError> {
        let mut state = SolverState::from_cnf(cnf)?;
        state.bump_inc = config.bump_inc;
        if config.seed != 0 {
            let mut rng = Rng::new(config.seed);
            for v in &mut state.vars {
                v.score = rng.unit_f64() * 1e-9;
            }
        }
        let unsat = state.has_empty_clause;
        Ok(Solver {
            state,
            cnf: cnf.clone(),
            restart: RestartPolicy::new(50, config.restart_margin),
            reduce: ReduceDbPolicy::default(),
            config,
            unsat,
            assumptions: Vec::new(),
            last: None,
            learned_log: Vec::new(),
            deadline: None,
        })
    }

    /// A solver over fresh variables and no clauses.
    pub fn with_vars(cards: &[usize], config: SolverConfig) -> Solver {
        Solver::new(&Cnf::new(cards.to_vec(), Vec::new()), config).expect("empty CNF is valid")
    }

    pub fn state(&self) -> &SolverState {
        &self.state
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Every clause added so far, before normalization.
    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn stats(&self) -> Stats {
        self.state.stats
    }

    /// Active states of every variable at the current trail position.
    pub fn active_states(&self) -> Vec<StateSet> {
        self.state.vars.iter().map(|v| v.astates.clone()).collect()
    }

    pub fn learned_log(&self) -> &[LearnedClause] {
        &self.learned_log
    }

    /// True once the clause set is known to be unsatisfiable.
    pub fn is_latched_unsat(&self) -> bool {
        self.unsat
    }

    /// Adds a clause between solves. Units become level-0 assertions; a clause
    /// falsified at level 0 makes every later solve return UNSAT.
    pub fn add_clause(&mut self, literals: &[Literal]) -> Result<(), LogicError> {
        let normalized = normalize_clause(&self.cnf.cards, literals)?;
        self.state.backtrack_to(0);
        self.last = None;
        self.cnf.clauses.push(Clause::new(literals.to_vec()));
        if self.unsat {
            return Ok(());
        }
        let c = match normalized {
            Normalized::Tautology => return Ok(()),
            Normalized::Empty => {
                self.unsat = true;
                return Ok(());
            }
            Normalized::Clause(c) => c,
        };
        let s = &mut self.state;
        let ids: Vec<LitId> = c.literals.iter().map(|l| s.intern(l.var, &l.states)).collect();
        if ids.len() == 1 {
            s.uclauses.push(ids[0]);
            if !s.assert_unit_clauses() {
                self.unsat = true;
            }
            return Ok(());
        }
        let (open, falsified): (Vec<LitId>, Vec<LitId>) = ids.iter().partition(|&&l| !s.falsified(l));
        match open.len() {
            0 => self.unsat = true,
            1 => {
                let l = open[0];
                let cid = s.add_clause_watching(ids, l, falsified[0], false, 0);
                if !s.implied(l) {
                    let d = s.literal(l);
                    let (var, states) = (d.var, d.states.clone());
                    if !s.assert_literal(var, &states, Some(cid)) {
                        self.unsat = true;
                    }
                }
            }
            _ => {
                let (w0, w1) = (open[0], open[1]);
                s.add_clause_watching(ids, w0, w1, false, 0);
            }
        }
        Ok(())
    }

    /// Queues an assumption for the next [`Solver::solve`] call.
    pub fn assume(&mut self, literal: Literal) -> Result<(), LogicError> {
        self.check_literal(&literal)?;
        self.assumptions.push(literal);
        Ok(())
    }

    fn check_literal(&self, l: &Literal) -> Result<(), LogicError> {
        let count = self.cnf.var_count();
        if l.var >= count {
            return Err(LogicError::UnknownVariable { var: l.var, count });
        }
        let card = self.cnf.cards[l.var];
        if l.states.width() != card {
            return Err(LogicError::InvalidState {
                var: l.var,
                width: l.states.width(),
                card,
            });
        }
        Ok(())
    }

    /// Solves under the queued assumptions, then clears them.
    pub fn solve(&mut self) -> SolveResult {
        let assumptions = std::mem::take(&mut self.assumptions);
        self.run(assumptions)
    }

    pub fn solve_assuming(&mut self, assumptions: &[Literal]) -> Result<SolveResult, LogicError> {
        for a in assumptions {
            self.check_literal(a)?;
        }
        self.assumptions.clear();
        Ok(self.run(assumptions.to_vec()))
    }

    /// The model's state for `var` after a SAT answer.
    pub fn value(&self, var: usize) -> Result<usize, LogicError> {
        match &self.last {
            Some(SolveResult {
                status: Status::Sat,
                model: Some(w),
                ..
            }) => w.get(var).ok_or(LogicError::UnknownVariable { var, count: w.0.len() }),
            _ => Err(LogicError::Precondition("value requires a SAT answer")),
        }
    }

    /// Returns to level 0 and forgets the last answer and queued assumptions.
    pub fn reset(&mut self) {
        self.state.backtrack_to(0);
        self.state.cclause = None;
        self.last = None;
        self.assumptions.clear();
    }

    fn run(&mut self, assumptions: Vec<Literal>) -> SolveResult {
        self.state.backtrack_to(0);
        self.last = None;
        self.deadline = self.config.time_limit.map(|d| Instant::now() + d);
        let status = self.search(&assumptions);
        let model = (status == Status::Sat).then(|| self.extract_model());
        if let Some(w) = &model {
            debug_assert!(evaluate(&self.cnf, w).unwrap_or(false), "model fails the CNF");
            debug_assert!(assumptions.iter().all(|a| a.states.contains(w.0[a.var])));
        }
        let result = SolveResult {
            status,
            model,
            stats: self.state.stats,
        };
        self.last = Some(result.clone());
        result
    }

    fn extract_model(&self) -> World {
        World(
            self.state
                .vars
                .iter()
                .map(|v| v.astates.lowest().expect("active states nonempty"))
                .collect(),
        )
    }

    fn search(&mut self, assumptions: &[Literal]) -> Status {
        if self.unsat || !self.state.assert_unit_clauses() {
            self.unsat = true;
            return Status::Unsat;
        }
        let mut steps: u32 = 0;
        loop {
            steps = steps.wrapping_add(1);
            if steps % 64 == 1 && self.deadline.is_some_and(|d| Instant::now() >= d) {
                return Status::Unknown;
            }
            let level = self.state.dlevel() as usize;
            let ok = if level < assumptions.len() {
                let a = &assumptions[level];
                if a.states.is_full() || self.state.implied_states(a.var, &a.states) {
                    self.state.open_level();
                    continue;
                }
                if self.state.falsified_states(a.var, &a.states) {
                    return Status::UnsatUnderAssumptions;
                }
                let planted = a.states.intersection(&self.state.vars[a.var].astates);
                self.state.stats.decisions += 1;
                self.state.decide(a.var, &planted)
            } else {
                match self.state.select_literal(self.config.threshold) {
                    None => return Status::Sat,
                    Some((var, states)) => {
                        self.state.stats.decisions += 1;
                        self.state.decide(var, &states)
                    }
                }
            };
            if !ok {
                if let Search::Done(status) = self.resolve_conflict() {
                    return status;
                }
            }
        }
    }

    /// Learns until an asserting clause installs cleanly, then applies the
    /// restart and reduction hooks.
    fn resolve_conflict(&mut self) -> Search {
        let mut restart = false;
        loop {
            self.state.stats.conflicts += 1;
            if self.state.dlevel() == 0 {
                self.unsat = true;
                return Search::Done(Status::Unsat);
            }
            self.state.scale_bump();
            let mut r = self.state.learn_asserting();
            if self.config.minimize {
                r = self.state.minimize(&r);
            }
            let lbd = self.state.compute_lbd(&r);
            if self.config.record_learned {
                self.record(&r, lbd);
            }
            restart |= self.config.restarts && self.restart.on_conflict(lbd);
            self.state.backtrack_to(r.assertion_level);
            if self.add_learned(&r, lbd) {
                break;
            }
        }
        if restart && self.state.dlevel() > 0 {
            self.state.backtrack_to(0);
            self.state.stats.restarts += 1;
        }
        if self.config.reduce {
            self.state.maybe_reduce(&mut self.reduce);
        }
        Search::Continue
    }

    fn record(&mut self, r: &LearnResult, lbd: u32) {
        let s = &self.state;
        let level = s.dlevel();
        let at_conflict_level = r
            .literals
            .iter()
            .filter(|&&l| {
                let d = s.literal(l);
                let v = &s.vars[d.var];
                d.states.iter().any(|t| !v.astates.contains(t) && v.states[t].plevel == level)
            })
            .count();
        self.learned_log.push(LearnedClause {
            clause: r.to_clause(s),
            at_conflict_level,
            conflict_level: level,
            assertion_level: r.assertion_level,
            lbd,
        });
    }

    /// Installs a learned clause at its assertion level and asserts it.
    fn add_learned(&mut self, r: &LearnResult, lbd: u32) -> bool {
        let s = &mut self.state;
        debug_assert_eq!(s.dlevel(), r.assertion_level);
        s.stats.learned += 1;
        let d = s.literal(r.asserting);
        let (var, states) = (d.var, d.states.clone());
        debug_assert!(!s.implied(r.asserting) && !s.falsified(r.asserting));
        let reason = r
            .last_at_m
            .map(|m| s.add_clause_watching(r.literals.clone(), r.asserting, m, true, lbd));
        s.assert_literal(var, &states, reason)
    }
}

/// One-shot convenience: solve `cnf` with `config`.
pub fn solve(cnf: &Cnf, config: SolverConfig) -> Result<SolveResult, LogicError> {
    Ok(Solver::new(cnf, config)?.solve())
}

pub fn solve_default(cnf: &Cnf) -> Result<SolveResult, LogicError> {
    solve(cnf, SolverConfig::default())
}
