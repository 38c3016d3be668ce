//! Lazy unit resolution over discrete CNFs.
//!
//! Every non-unit clause watches two of its literals, and every literal that
//! is watched by at least one clause watches one of its states. A clause is
//! only visited when one of its watched literals loses its last active state,
//! and a literal is only visited when the state it watches is pruned.
//!
//! The trail is kept per decision level: `tstack` holds the pruning clock of
//! each level and `vstack` the active-state snapshots of the variables that
//! lost states at that level. Undoing a level restores each touched variable
//! in one step, no matter how many literals were derived for it.

use crate::logic::{normalize_clause, Clause, Cnf, Literal, LogicError, Normalized};
use crate::stateset::StateSet;
use std::collections::{HashMap, VecDeque};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LitId(u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(u32);

impl LitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ClauseId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Per-state bookkeeping. `plevel`, `ptime` and `reason` are meaningful only
/// while the state is pruned.
#[derive(Clone, Debug, Default)]
pub struct StateRecord {
    pub plevel: u32,
    pub ptime: u32,
    /// `None` when pruned by a decision or a level-0 assertion.
    pub reason: Option<ClauseId>,
    /// Literals watching this state, each with its first state word.
    pub watched_by: Vec<(LitId, u64)>,
    pub score: f64,
}

#[derive(Clone, Debug)]
pub struct Variable {
    pub card: usize,
    pub astates: StateSet,
    /// Decision levels at which this variable lost states (strictly increasing).
    pub lstack: Vec<u32>,
    /// States of this variable in the conflict clause under analysis.
    pub cstates: StateSet,
    pub last_cstate: Option<usize>,
    pub score: f64,
    pub states: Vec<StateRecord>,
    literal_cache: HashMap<StateSet, LitId>,
}

impl Variable {
    fn new(card: usize) -> Variable {
        Variable {
            card,
            astates: StateSet::full(card),
            lstack: Vec::new(),
            cstates: StateSet::empty(card),
            last_cstate: None,
            score: 0.0,
            states: vec![StateRecord::default(); card],
            literal_cache: HashMap::new(),
        }
    }

    /// The pruned state of `set` with the latest falsification time.
    pub fn last_pruned_state(&self, set: &StateSet) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in set {
            if best.is_none_or(|b| pruned_after(&self.states[s], &self.states[b])) {
                best = Some(s);
            }
        }
        best
    }
}

/// Whether `a` was pruned after `b`: lexicographic on (level, time).
#[inline]
pub fn pruned_after(a: &StateRecord, b: &StateRecord) -> bool {
    (a.plevel, a.ptime) > (b.plevel, b.ptime)
}

/// An entry in a literal's watch list. `blocker` is another literal of the
/// clause; while it is implied the clause is satisfied and need not be read.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Watch {
    pub clause: ClauseId,
    pub blocker: LitId,
}

/// An interned literal.
#[derive(Clone, Debug)]
pub struct LiteralData {
    pub var: usize,
    pub states: StateSet,
    /// Clauses watching this literal.
    pub watched_by: Vec<Watch>,
}

#[derive(Clone, Debug)]
pub struct ClauseData {
    pub lits: Vec<LitId>,
    pub watch: [LitId; 2],
    pub learned: bool,
    pub lbd: u32,
    pub deleted: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub learned: u64,
    pub restarts: u64,
    pub deleted: u64,
}

#[derive(Clone, Debug)]
pub struct SolverState {
    pub vars: Vec<Variable>,
    pub lits: Vec<LiteralData>,
    /// Variable and first state word of each literal, dense for the hot
    /// checks in propagation.
    lit_vars: Vec<u32>,
    lit_heads: Vec<u64>,
    pub clauses: Vec<ClauseData>,
    free_clauses: Vec<ClauseId>,
    /// Pruning clock per decision level; the top is the current level's.
    pub tstack: Vec<u32>,
    /// Active-state snapshots of the variables that lost states at levels
    /// above 0, oldest first.
    pub vstack: Vec<(usize, StateSet)>,
    /// Start of each level's snapshots in `vstack`, for levels 1 and up.
    vmarks: Vec<usize>,
    pub cclause: Option<ClauseId>,
    pub nasserting: usize,
    /// Literals of unit input clauses, asserted at level 0 by the solver.
    pub uclauses: Vec<LitId>,
    pub bump: f64,
    pub bump_inc: f64,
    pub stats: Stats,
    /// Set when an empty clause was loaded.
    pub has_empty_clause: bool,
    queue: VecDeque<(usize, StateSet, Option<ClauseId>)>,
    pub(crate) touched: Vec<usize>,
}

impl SolverState {
    /// A state over variables with the given cardinalities and no clauses.
    pub fn new(cards: &[usize]) -> SolverState {
        assert!(cards.iter().all(|&c| c >= 2), "cardinalities must be at least 2");
        SolverState {
            vars: cards.iter().map(|&c| Variable::new(c)).collect(),
            lits: Vec::new(),
            lit_vars: Vec::new(),
            lit_heads: Vec::new(),
            clauses: Vec::new(),
            free_clauses: Vec::new(),
            tstack: vec![0],
            vstack: Vec::new(),
            vmarks: Vec::new(),
            cclause: None,
            nasserting: 0,
            uclauses: Vec::new(),
            bump: 1.0,
            bump_inc: 1.05,
            stats: Stats::default(),
            has_empty_clause: false,
            queue: VecDeque::new(),
            touched: Vec::new(),
        }
    }

    /// Builds the state for `cnf`: non-unit clauses watch their first two
    /// literals, unit clauses are queued in `uclauses`, tautologies dropped.
    pub fn from_cnf(cnf: &Cnf) -> Result<SolverState, LogicError> {
        let mut s = SolverState::new(&cnf.cards);
        for c in &cnf.clauses {
            match normalize_clause(&cnf.cards, &c.literals)? {
                Normalized::Tautology => {}
                Normalized::Empty => s.has_empty_clause = true,
                Normalized::Clause(c) => {
                    let ids: Vec<LitId> = c.literals.iter().map(|l| s.intern(l.var, &l.states)).collect();
                    if ids.len() == 1 {
                        s.uclauses.push(ids[0]);
                    } else {
                        let (w0, w1) = (ids[0], ids[1]);
                        s.add_clause_watching(ids, w0, w1, false, 0);
                    }
                }
            }
        }
        Ok(s)
    }

    #[inline]
    pub fn dlevel(&self) -> u32 {
        (self.tstack.len() - 1) as u32
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Returns the unique literal for `(var, states)`, creating it if needed.
    pub fn intern(&mut self, var: usize, states: &StateSet) -> LitId {
        if let Some(&id) = self.vars[var].literal_cache.get(states) {
            return id;
        }
        debug_assert!(states.is_proper());
        let id = LitId(self.lits.len() as u32);
        self.lit_vars.push(var as u32);
        self.lit_heads.push(states.first_word());
        self.lits.push(LiteralData {
            var,
            states: states.clone(),
            watched_by: Vec::new(),
        });
        self.vars[var].literal_cache.insert(states.clone(), id);
        id
    }

    pub fn literal(&self, l: LitId) -> &LiteralData {
        &self.lits[l.index()]
    }

    pub fn clause(&self, c: ClauseId) -> &ClauseData {
        &self.clauses[c.index()]
    }

    /// Value form of an interned literal.
    pub fn literal_value(&self, l: LitId) -> Literal {
        let d = self.literal(l);
        Literal::new(d.var, d.states.clone())
    }

    pub fn clause_value(&self, c: ClauseId) -> Clause {
        self.clause(c).lits.iter().map(|&l| self.literal_value(l)).collect()
    }

    /// Iterator over live (non-deleted) clause ids.
    pub fn live_clauses(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.deleted)
            .map(|(i, _)| ClauseId(i as u32))
    }

    #[inline]
    pub fn implied(&self, l: LitId) -> bool {
        let a = &self.vars[self.lit_vars[l.index()] as usize].astates;
        if a.is_one_word() {
            a.first_word() & !self.lit_heads[l.index()] == 0
        } else {
            a.is_subset(&self.literal(l).states)
        }
    }

    #[inline]
    pub fn falsified(&self, l: LitId) -> bool {
        let a = &self.vars[self.lit_vars[l.index()] as usize].astates;
        if a.is_one_word() {
            a.first_word() & self.lit_heads[l.index()] == 0
        } else {
            !a.intersects(&self.literal(l).states)
        }
    }

    /// Value-level variants used before a literal is interned.
    pub fn implied_states(&self, var: usize, states: &StateSet) -> bool {
        self.vars[var].astates.is_subset(states)
    }

    pub fn falsified_states(&self, var: usize, states: &StateSet) -> bool {
        !states.intersects(&self.vars[var].astates)
    }

    /// The most significant active state of `l`, if any.
    #[inline]
    pub fn active_state(&self, l: LitId) -> Option<usize> {
        let d = self.literal(l);
        d.states.highest_common(&self.vars[d.var].astates)
    }

    /// The state a literal should watch when a clause starts watching it: an
    /// active state if it has one, otherwise its last pruned state so that
    /// backtracking past that pruning reactivates the watched state first.
    fn state_to_watch(&self, l: LitId) -> usize {
        self.active_state(l).unwrap_or_else(|| {
            let d = self.literal(l);
            self.vars[d.var].last_pruned_state(&d.states).expect("literal has states")
        })
    }

    /// Adds `c` to the watch list of `l`, making `l` watch a state first if
    /// no clause watched it before.
    fn watch_literal(&mut self, l: LitId, c: ClauseId, blocker: LitId) {
        if self.literal(l).watched_by.is_empty() {
            let s = self.state_to_watch(l);
            let var = self.literal(l).var;
            let head = self.lit_heads[l.index()];
            self.vars[var].states[s].watched_by.push((l, head));
        }
        self.lits[l.index()].watched_by.push(Watch { clause: c, blocker });
    }

    /// Installs a clause watching `w0` and `w1`.
    pub fn add_clause_watching(&mut self, lits: Vec<LitId>, w0: LitId, w1: LitId, learned: bool, lbd: u32) -> ClauseId {
        debug_assert!(lits.len() >= 2 && w0 != w1);
        debug_assert!(lits.contains(&w0) && lits.contains(&w1));
        let data = ClauseData {
            lits,
            watch: [w0, w1],
            learned,
            lbd,
            deleted: false,
        };
        let id = match self.free_clauses.pop() {
            Some(id) => {
                self.clauses[id.index()] = data;
                id
            }
            None => {
                self.clauses.push(data);
                ClauseId(self.clauses.len() as u32 - 1)
            }
        };
        self.watch_literal(w0, id, w1);
        self.watch_literal(w1, id, w0);
        id
    }

    /// Unhooks and deletes a clause. The slot may be reused.
    pub fn delete_clause(&mut self, c: ClauseId) {
        let watch = self.clauses[c.index()].watch;
        for l in watch {
            let wl = &mut self.lits[l.index()].watched_by;
            if let Some(pos) = wl.iter().position(|w| w.clause == c) {
                wl.swap_remove(pos);
            }
            if wl.is_empty() {
                let var = self.lits[l.index()].var;
                for rec in self.vars[var].states.iter_mut() {
                    if let Some(pos) = rec.watched_by.iter().position(|&(x, _)| x == l) {
                        rec.watched_by.swap_remove(pos);
                        break;
                    }
                }
            }
        }
        let cl = &mut self.clauses[c.index()];
        cl.deleted = true;
        cl.lits = Vec::new();
        self.free_clauses.push(c);
    }

    /// Opens a new decision level and asserts `states` on `var` with no
    /// reason. Returns false on contradiction, leaving the falsified clause
    /// in `cclause`.
    pub fn decide(&mut self, var: usize, states: &StateSet) -> bool {
        debug_assert!(
            !self.implied_states(var, states) && !self.falsified_states(var, states),
            "decision must be neither implied nor falsified"
        );
        self.open_level();
        self.assert_literal(var, states, None)
    }

    /// Opens a decision level without asserting anything.
    pub fn open_level(&mut self) {
        self.tstack.push(0);
        self.vmarks.push(self.vstack.len());
    }

    /// Undoes the last decision level.
    pub fn undecide(&mut self) {
        assert!(self.dlevel() > 0, "undecide at level 0");
        self.tstack.pop();
        let mark = self.vmarks.pop().expect("vmarks in sync with tstack");
        for (v, saved) in self.vstack.drain(mark..) {
            let var = &mut self.vars[v];
            var.astates = saved;
            var.lstack.pop();
        }
    }

    pub fn backtrack_to(&mut self, level: u32) {
        while self.dlevel() > level {
            self.undecide();
        }
    }

    /// Asserts `states` on `var` and runs unit resolution to fixpoint.
    ///
    /// Requires the literal to be neither implied nor falsified. Returns false
    /// on contradiction, with the falsified clause in `cclause`.
    pub fn assert_literal(&mut self, var: usize, states: &StateSet, reason: Option<ClauseId>) -> bool {
        self.queue.clear();
        self.queue.push_back((var, states.clone(), reason));
        let ok = self.run_queue();
        self.queue.clear();
        ok
    }

    /// Asserts the pending unit input clauses at level 0, skipping implied
    /// ones. Returns false if one is falsified or propagation fails.
    pub fn assert_unit_clauses(&mut self) -> bool {
        debug_assert_eq!(self.dlevel(), 0);
        let units = std::mem::take(&mut self.uclauses);
        for l in units {
            if self.implied(l) {
                continue;
            }
            if self.falsified(l) {
                self.cclause = None;
                return false;
            }
            let d = self.literal(l);
            let (var, states) = (d.var, d.states.clone());
            if !self.assert_literal(var, &states, None) {
                return false;
            }
        }
        true
    }

    fn run_queue(&mut self) -> bool {
        let level = self.dlevel();
        while let Some((v, lit_states, reason)) = self.queue.pop_front() {
            let pruned = self.vars[v].astates.difference(&lit_states);
            if pruned.is_empty() {
                // implied by an earlier entry of this queue
                continue;
            }
            if !lit_states.intersects(&self.vars[v].astates) {
                // an earlier entry falsified it; its reason clause is now empty
                debug_assert!(reason.is_some() || level == 0);
                self.cclause = reason;
                return false;
            }

            let ptime = {
                let clock = self.tstack.last_mut().expect("tstack never empty");
                let t = *clock;
                *clock += 1;
                t
            };
            self.stats.propagations += 1;
            {
                let var = &mut self.vars[v];
                for s in &pruned {
                    let rec = &mut var.states[s];
                    rec.plevel = level;
                    rec.ptime = ptime;
                    rec.reason = reason;
                }
                if level != 0 && var.lstack.last() != Some(&level) {
                    var.lstack.push(level);
                    self.vstack.push((v, var.astates.clone()));
                }
                var.astates.intersect_with(&lit_states);
            }

            for s in &pruned {
                // new watchers always land on active states, never on s
                let mut watchers = std::mem::take(&mut self.vars[v].states[s].watched_by);
                let ok = self.visit_watchers(v, &mut watchers);
                self.vars[v].states[s].watched_by = watchers;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Moves each watcher of a just-pruned state of `v` to another active
    /// state, then visits the clauses of the watchers that have none left.
    /// Watchers that stay on the pruned state remain in `watchers`.
    fn visit_watchers(&mut self, v: usize, watchers: &mut Vec<(LitId, u64)>) -> bool {
        let var = &mut self.vars[v];
        let states = &mut var.states;
        if var.card <= 64 {
            let active = var.astates.first_word();
            let mut kept = 0;
            for i in 0..watchers.len() {
                let (l, head) = watchers[i];
                let w = head & active;
                if w != 0 {
                    states[63 - w.leading_zeros() as usize].watched_by.push((l, head));
                } else {
                    watchers[kept] = (l, head);
                    kept += 1;
                }
            }
            watchers.truncate(kept);
        } else {
            let lits = &self.lits;
            let active = &var.astates;
            watchers.retain(|&(l, head)| match lits[l.index()].states.highest_common(active) {
                Some(s2) => {
                    states[s2].watched_by.push((l, head));
                    false
                }
                None => true,
            });
        }

        let mut i = 0;
        while i < watchers.len() {
            let l1 = watchers[i].0;
            // l1 is falsified: visit the clauses watching it
            let mut j = 0;
            while let Some(&Watch { clause: c, blocker }) = self.lits[l1.index()].watched_by.get(j) {
                // satisfied clauses may keep l1 falsified: l1 was falsified no
                // earlier than the satisfying literal became implied
                if self.implied(blocker) {
                    j += 1;
                    continue;
                }
                let clause = &self.clauses[c.index()];
                let l2 = if clause.watch[0] == l1 { clause.watch[1] } else { clause.watch[0] };
                if l2 != blocker && self.implied(l2) {
                    self.lits[l1.index()].watched_by[j].blocker = l2;
                    j += 1;
                    continue;
                }
                let l3 = clause.lits.iter().copied().find(|&l| l != l2 && l != l1 && !self.falsified(l));
                if let Some(l3) = l3 {
                    self.watch_literal(l3, c, l2);
                    self.lits[l1.index()].watched_by.swap_remove(j);
                    let w = &mut self.clauses[c.index()].watch;
                    if w[0] == l1 {
                        w[0] = l3;
                    } else {
                        w[1] = l3;
                    }
                    continue;
                }
                if self.falsified(l2) {
                    self.cclause = Some(c);
                    return false;
                }
                let d = &self.lits[l2.index()];
                self.queue.push_back((d.var, d.states.clone(), Some(c)));
                j += 1;
            }
            if self.lits[l1.index()].watched_by.is_empty() {
                watchers.swap_remove(i);
                continue;
            }
            i += 1;
        }
        true
    }

    /// Checks the watch structure at a quiescent point. Used by tests.
    pub fn check_watches(&self) -> Result<(), String> {
        for c in self.live_clauses() {
            let cl = self.clause(c);
            for &w in &cl.watch {
                if !self.literal(w).watched_by.iter().any(|x| x.clause == c) {
                    return Err(format!("clause {c:?} not in watch list of {w:?}"));
                }
            }
            let ok = cl.watch.iter().all(|&w| !self.falsified(w)) || cl.lits.iter().any(|&l| self.implied(l));
            if !ok {
                return Err(format!("clause {c:?} has a falsified watch and is not implied"));
            }
        }
        for (li, d) in self.lits.iter().enumerate() {
            let count: usize = self.vars[d.var]
                .states
                .iter()
                .map(|r| r.watched_by.iter().filter(|&&(x, _)| x.index() == li).count())
                .sum();
            let expect = usize::from(!d.watched_by.is_empty());
            if count != expect {
                return Err(format!("literal {li} watches {count} states, expected {expect}"));
            }
            for &Watch { clause: c, blocker } in &d.watched_by {
                if self.clause(c).deleted || !self.clause(c).watch.contains(&LitId(li as u32)) {
                    return Err(format!("stale watcher {c:?} on literal {li}"));
                }
                if !self.clause(c).lits.contains(&blocker) || blocker.index() == li {
                    return Err(format!("bad blocker {blocker:?} for {c:?} on literal {li}"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(var: usize, card: usize, states: &[usize]) -> Literal {
        Literal::from_states(var, card, states.iter().map(|s| s - 1))
    }

    fn set(card: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(card, states.iter().map(|s| s - 1))
    }

    fn small_example() -> Cnf {
        Cnf::new(
            vec![4, 4],
            vec![
                Clause::new(vec![lit(0, 4, &[1, 3]), lit(1, 4, &[1, 2])]),
                Clause::new(vec![lit(0, 4, &[2, 4])]),
            ],
        )
    }

    fn level0(s: &mut SolverState) -> bool {
        let units = s.uclauses.clone();
        units.into_iter().all(|u| {
            let d = s.literal(u).clone();
            s.implied(u) || s.assert_literal(d.var, &d.states, None)
        })
    }

    #[test]
    fn init_small_example() {
        let s = SolverState::from_cnf(&small_example()).unwrap();
        assert_eq!(s.clauses.len(), 1);
        assert_eq!(s.uclauses.len(), 1);
        assert_eq!(s.literal(s.uclauses[0]).states, set(4, &[2, 4]));
        let c = s.clause(ClauseId(0));
        assert_eq!(c.watch, [c.lits[0], c.lits[1]]);
        assert_eq!(s.dlevel(), 0);
        assert_eq!(s.bump, 1.0);
        assert_eq!(s.bump_inc, 1.05);
        s.check_watches().unwrap();

        let empty = SolverState::from_cnf(&Cnf::new(vec![3], vec![])).unwrap();
        assert!(empty.clauses.is_empty() && empty.uclauses.is_empty());
        assert_eq!(empty.dlevel(), 0);
    }

    #[test]
    fn unit_assertion_prunes_y() {
        let mut s = SolverState::from_cnf(&small_example()).unwrap();
        assert!(level0(&mut s));
        assert_eq!(s.vars[0].astates, set(4, &[2, 4]));
        assert_eq!(s.vars[1].astates, set(4, &[1, 2]));
        // level-0 prunes leave no snapshots
        assert!(s.vstack.is_empty());
        assert!(s.vars[1].lstack.is_empty());
        s.check_watches().unwrap();
    }

    #[test]
    fn decide_and_undecide_on_small_example() {
        let mut s = SolverState::from_cnf(&small_example()).unwrap();
        assert!(level0(&mut s));
        assert!(s.decide(1, &set(4, &[1])));
        assert_eq!(s.vars[1].astates, set(4, &[1]));
        assert_eq!(s.dlevel(), 1);
        assert_eq!(s.vars[1].lstack, vec![1]);
        s.undecide();
        assert_eq!(s.vars[1].astates, set(4, &[1, 2]));
        assert_eq!(s.dlevel(), 0);
        assert!(s.vars[1].lstack.is_empty());
    }

    #[test]
    fn decision_conflict() {
        // (x1 v y{1,2}) and (x1 v y3), deciding x{2,3}
        let cnf = Cnf::new(
            vec![3, 3],
            vec![
                Clause::new(vec![lit(0, 3, &[1]), lit(1, 3, &[1, 2])]),
                Clause::new(vec![lit(0, 3, &[1]), lit(1, 3, &[3])]),
            ],
        );
        let mut s = SolverState::from_cnf(&cnf).unwrap();
        assert!(!s.decide(0, &set(3, &[2, 3])));
        assert_eq!(s.cclause, Some(ClauseId(1)));
    }

    #[test]
    fn decide_without_clauses() {
        let mut s = SolverState::new(&[3]);
        assert!(s.decide(0, &set(3, &[1])));
        assert_eq!(s.vars[0].astates, set(3, &[1]));
    }

    #[test]
    fn level0_units_conflict() {
        let cnf = Cnf::new(
            vec![3],
            vec![Clause::new(vec![lit(0, 3, &[1, 2])]), Clause::new(vec![lit(0, 3, &[2, 3])])],
        );
        let mut s = SolverState::from_cnf(&cnf).unwrap();
        assert!(level0(&mut s));
        assert_eq!(s.vars[0].astates, set(3, &[2]));
        let x13 = s.intern(0, &set(3, &[1, 3]));
        assert!(s.falsified(x13));
        assert!(!s.assert_literal(0, &set(3, &[1, 3]), None));
    }

    #[test]
    fn predicates() {
        let mut s = SolverState::new(&[4]);
        s.vars[0].astates = set(4, &[2, 4]);
        let a = s.intern(0, &set(4, &[1, 2, 4]));
        let b = s.intern(0, &set(4, &[1, 3]));
        assert!(s.implied(a));
        assert!(s.falsified(b));
        assert_eq!(s.active_state(a), Some(3));
        assert_eq!(s.intern(0, &set(4, &[1, 2, 4])), a);

        let rec = |plevel, ptime| StateRecord {
            plevel,
            ptime,
            ..Default::default()
        };
        assert!(pruned_after(&rec(2, 3), &rec(2, 1)));
        assert!(!pruned_after(&rec(1, 9), &rec(2, 0)));
    }

    #[test]
    fn nested_levels_restore_lifo() {
        let mut s = SolverState::new(&[4, 4]);
        let before: Vec<_> = s.vars.iter().map(|v| v.astates.clone()).collect();
        assert!(s.decide(0, &set(4, &[1, 2, 3])));
        let mid: Vec<_> = s.vars.iter().map(|v| v.astates.clone()).collect();
        assert!(s.decide(0, &set(4, &[1])));
        assert!(s.decide(1, &set(4, &[2, 3])));
        s.undecide();
        s.undecide();
        assert_eq!(s.vars.iter().map(|v| v.astates.clone()).collect::<Vec<_>>(), mid);
        s.undecide();
        assert_eq!(s.vars.iter().map(|v| v.astates.clone()).collect::<Vec<_>>(), before);
        assert_eq!(s.dlevel(), 0);
    }

    #[test]
    #[should_panic]
    fn undecide_at_root_panics() {
        SolverState::new(&[2]).undecide();
    }
}
