//! First-UIP asserting clause construction.
//!
//! The conflict clause is never built explicitly while it is being resolved.
//! Instead each variable keeps the states it contributes in `cstates`, plus
//! the latest-pruned of those states in `last_cstate`. Resolving on a state
//! intersects `cstates` of its variable with the reason's literal and folds
//! the reason's other literals in. The loop stops once exactly one variable
//! has a state pruned at the conflict level.

use crate::logic::Clause;
use crate::propagate::{pruned_after, ClauseId, LitId, SolverState};
use crate::stateset::StateSet;

/// An asserting clause ready to be installed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnResult {
    /// Asserting literal first; for non-unit clauses `last_at_m` second.
    pub literals: Vec<LitId>,
    pub asserting: LitId,
    pub assertion_level: u32,
    pub last_at_m: Option<LitId>,
}

impl LearnResult {
    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    pub fn to_clause(&self, s: &SolverState) -> Clause {
        self.literals.iter().map(|&l| s.literal_value(l)).collect()
    }
}

impl SolverState {
    /// Falsification time of a pruned literal: its latest-pruned state.
    fn falsification_time(&self, l: LitId) -> (u32, u32) {
        let d = self.literal(l);
        let var = &self.vars[d.var];
        let s = var.last_pruned_state(&d.states).expect("literal has states");
        (var.states[s].plevel, var.states[s].ptime)
    }

    /// Adds the states of a falsified literal to the implicit conflict clause.
    pub fn analyze_literal(&mut self, var: usize, states: &StateSet) {
        let level = self.dlevel();
        let v = &self.vars[var];
        debug_assert!(!states.intersects(&v.astates), "analyzed literal must be falsified");
        let at_conflict = v.last_cstate.is_some_and(|s| v.states[s].plevel == level);
        let added = states.difference(&v.cstates);
        if added.is_empty() {
            return;
        }
        if v.cstates.is_empty() {
            self.touched.push(var);
        }
        let v = &mut self.vars[var];
        for s in &added {
            v.cstates.insert(s);
            if v.last_cstate.is_none_or(|last| pruned_after(&v.states[s], &v.states[last])) {
                v.last_cstate = Some(s);
            }
        }
        let now_at_conflict = v.last_cstate.is_some_and(|s| v.states[s].plevel == level);
        self.update_score(var, &added);
        if !at_conflict && now_at_conflict {
            self.nasserting += 1;
        }
    }

    /// Variable whose `last_cstate` was pruned latest.
    fn latest_conflict_var(&self) -> usize {
        let mut best: Option<usize> = None;
        for &v in &self.touched {
            let var = &self.vars[v];
            let Some(s) = var.last_cstate else { continue };
            match best {
                Some(b) => {
                    let bv = &self.vars[b];
                    let bs = bv.last_cstate.expect("best has a state");
                    if pruned_after(&var.states[s], &bv.states[bs]) {
                        best = Some(v);
                    }
                }
                None => best = Some(v),
            }
        }
        best.expect("conflict clause is nonempty")
    }

    /// Learns a first-UIP asserting clause from the clause in `cclause`.
    ///
    /// Must be called at the conflict level, before backtracking.
    pub fn learn_asserting(&mut self) -> LearnResult {
        let conflict = self.cclause.take().expect("no conflict to analyze");
        let level = self.dlevel();
        assert!(level > 0, "learning requires a decision");
        debug_assert_eq!(self.nasserting, 0);
        debug_assert!(self.touched.is_empty());

        let lits = self.clause(conflict).lits.clone();
        for l in lits {
            let d = self.literal(l);
            let (var, states) = (d.var, d.states.clone());
            self.analyze_literal(var, &states);
        }

        while self.nasserting > 1 {
            let v = self.latest_conflict_var();
            let s = self.vars[v].last_cstate.expect("variable in conflict clause");
            let reason: ClauseId = self.vars[v].states[s]
                .reason
                .expect("latest conflict state at conflict level has a reason");
            let reason_lits = self.clause(reason).lits.clone();
            for l in reason_lits {
                let d = self.literal(l);
                if d.var == v {
                    let states = d.states.clone();
                    let var = &mut self.vars[v];
                    var.cstates.intersect_with(&states);
                    var.last_cstate = var.last_pruned_state(&var.cstates);
                    let still_at_conflict = var.last_cstate.is_some_and(|t| var.states[t].plevel == level);
                    if !still_at_conflict {
                        self.nasserting -= 1;
                    }
                } else {
                    let (var, states) = (d.var, d.states.clone());
                    self.analyze_literal(var, &states);
                }
            }
        }

        self.materialize()
    }

    /// Builds the learned clause from the scratch fields and clears them.
    fn materialize(&mut self) -> LearnResult {
        let level = self.dlevel();
        let touched = std::mem::take(&mut self.touched);
        let mut asserting: Option<LitId> = None;
        let mut others: Vec<(LitId, (u32, u32))> = Vec::new();
        for &v in &touched {
            if self.vars[v].cstates.is_empty() {
                continue;
            }
            let card = self.vars[v].card;
            let states = std::mem::replace(&mut self.vars[v].cstates, StateSet::empty(card));
            let last = self.vars[v].last_cstate.take().expect("nonempty cstates has a last state");
            let rec = &self.vars[v].states[last];
            let time = (rec.plevel, rec.ptime);
            let l = self.intern(v, &states);
            if time.0 == level {
                debug_assert!(asserting.is_none(), "more than one literal at the conflict level");
                asserting = Some(l);
            } else {
                others.push((l, time));
            }
        }
        for &v in &touched {
            self.vars[v].last_cstate = None;
        }
        self.touched = touched;
        self.touched.clear();
        self.nasserting = 0;

        let asserting = asserting.expect("asserting literal at the conflict level");
        build_result(asserting, others)
    }

    /// Literal block distance: distinct falsification levels of the
    /// non-asserting literals plus the current (conflict) level.
    pub fn compute_lbd(&self, r: &LearnResult) -> u32 {
        let mut levels: Vec<u32> = r
            .literals
            .iter()
            .filter(|&&l| l != r.asserting)
            .map(|&l| self.falsification_time(l).0)
            .collect();
        levels.push(self.dlevel());
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    /// One-step self-subsumption: drops a non-asserting literal when every
    /// one of its states was pruned by a reason whose other literals are all
    /// contained in the learned clause.
    pub fn minimize(&self, r: &LearnResult) -> LearnResult {
        let contained = |var: usize, states: &StateSet| {
            r.literals.iter().any(|&l| {
                let d = self.literal(l);
                d.var == var && states.is_subset(&d.states)
            })
        };
        let mut others = Vec::new();
        for &l in &r.literals {
            if l == r.asserting {
                continue;
            }
            let d = self.literal(l);
            let redundant = d.states.iter().all(|t| match self.vars[d.var].states[t].reason {
                None => false,
                Some(reason) => self.clause(reason).lits.iter().all(|&rl| {
                    let rd = self.literal(rl);
                    rd.var == d.var || contained(rd.var, &rd.states)
                }),
            });
            if !redundant {
                others.push((l, self.falsification_time(l)));
            }
        }
        build_result(r.asserting, others)
    }
}

fn build_result(asserting: LitId, others: Vec<(LitId, (u32, u32))>) -> LearnResult {
    let last = others.iter().max_by_key(|(_, t)| *t).copied();
    let mut literals = Vec::with_capacity(others.len() + 1);
    literals.push(asserting);
    if let Some((lm, _)) = last {
        literals.push(lm);
    }
    literals.extend(others.iter().map(|(l, _)| *l).filter(|l| Some(*l) != last.map(|x| x.0)));
    LearnResult {
        literals,
        asserting,
        assertion_level: last.map_or(0, |(_, t)| t.0),
        last_at_m: last.map(|(l, _)| l),
    }
}
