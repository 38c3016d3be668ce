//! Decision selection, activity scores, restarts and learned-clause cleanup.

use crate::propagate::{ClauseId, SolverState};
use crate::stateset::StateSet;
use std::collections::VecDeque;

/// Scores above this trigger a uniform rescale.
const RESCALE_LIMIT: f64 = 1e100;
const RESCALE_FACTOR: f64 = 1e-100;

impl SolverState {
    /// Bumps the states newly added to a conflict clause and their variable.
    pub fn update_score(&mut self, var: usize, added: &StateSet) {
        let bump = self.bump;
        let v = &mut self.vars[var];
        let mut overflow = false;
        for s in added {
            let rec = &mut v.states[s];
            rec.score += bump;
            overflow |= rec.score > RESCALE_LIMIT;
        }
        v.score += bump * (added.len() as f64 / v.card as f64);
        overflow |= v.score > RESCALE_LIMIT;
        if overflow {
            self.rescale_scores();
        }
    }

    fn rescale_scores(&mut self) {
        for v in &mut self.vars {
            v.score *= RESCALE_FACTOR;
            for rec in &mut v.states {
                rec.score *= RESCALE_FACTOR;
            }
        }
        self.bump *= RESCALE_FACTOR;
    }

    /// Grows the bump so recent conflicts weigh more.
    pub fn scale_bump(&mut self) {
        self.bump *= self.bump_inc;
        if self.bump > RESCALE_LIMIT {
            self.rescale_scores();
        }
    }

    /// Picks the next decision: the variable with the highest
    /// `score / |active states|`, restricted to its top-scoring active states
    /// until their score reaches `threshold` of the active total.
    ///
    /// Returns `None` when every variable has a single active state.
    pub fn select_literal(&self, threshold: f64) -> Option<(usize, StateSet)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, v) in self.vars.iter().enumerate() {
            if v.astates.is_single() {
                continue;
            }
            let t = v.score / v.astates.len() as f64;
            if best.is_none_or(|(_, bt)| t > bt) {
                best = Some((i, t));
            }
        }
        let (var, _) = best?;
        Some((var, self.select_states(var, threshold)))
    }

    fn select_states(&self, var: usize, threshold: f64) -> StateSet {
        let v = &self.vars[var];
        let mut active: Vec<(usize, f64)> = v.astates.iter().map(|s| (s, v.states[s].score)).collect();
        let total: f64 = active.iter().map(|(_, sc)| sc).sum();
        let mut chosen = StateSet::empty(v.card);
        if total <= 0.0 {
            chosen.insert(active[0].0);
            return chosen;
        }
        // highest score first, lowest id on ties (the sort is stable)
        active.sort_by(|a, b| b.1.total_cmp(&a.1));
        let cap = active.len() - 1;
        let mut sum = 0.0;
        for (s, sc) in active.into_iter().take(cap) {
            if sum > threshold * total {
                break;
            }
            chosen.insert(s);
            sum += sc;
        }
        chosen
    }
}

/// LBD-driven restarts: restart when the recent average LBD, scaled by the
/// margin, exceeds the average over the whole run.
#[derive(Clone, Debug)]
pub struct RestartPolicy {
    window: VecDeque<u32>,
    window_sum: u64,
    capacity: usize,
    global_sum: u64,
    global_count: u64,
    pub margin: f64,
}

impl Default for RestartPolicy {
    fn default() -> Self {
        RestartPolicy::new(50, 0.8)
    }
}

impl RestartPolicy {
    pub fn new(capacity: usize, margin: f64) -> RestartPolicy {
        RestartPolicy {
            window: VecDeque::with_capacity(capacity),
            window_sum: 0,
            capacity,
            global_sum: 0,
            global_count: 0,
            margin,
        }
    }

    /// Records the LBD of a learned clause; true means restart now.
    pub fn on_conflict(&mut self, lbd: u32) -> bool {
        self.global_sum += lbd as u64;
        self.global_count += 1;
        if self.window.len() == self.capacity {
            self.window_sum -= self.window.pop_front().unwrap_or(0) as u64;
        }
        self.window.push_back(lbd);
        self.window_sum += lbd as u64;
        if self.window.len() < self.capacity {
            return false;
        }
        let recent = self.window_sum as f64 / self.window.len() as f64;
        let global = self.global_sum as f64 / self.global_count as f64;
        if recent * self.margin > global {
            self.window.clear();
            self.window_sum = 0;
            true
        } else {
            false
        }
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }
}

/// Schedules learned-clause database reductions by conflict count.
#[derive(Clone, Debug)]
pub struct ReduceDbPolicy {
    pub next_at: u64,
    pub interval_base: u64,
    pub interval_step: u64,
    pub reductions_done: u64,
}

impl Default for ReduceDbPolicy {
    fn default() -> Self {
        ReduceDbPolicy {
            next_at: 2000,
            interval_base: 2000,
            interval_step: 300,
            reductions_done: 0,
        }
    }
}

impl ReduceDbPolicy {
    pub fn due(&self, conflicts: u64) -> bool {
        conflicts >= self.next_at
    }

    fn advance(&mut self, conflicts: u64) {
        self.reductions_done += 1;
        self.next_at = conflicts + self.interval_base + self.interval_step * self.reductions_done;
    }
}

impl SolverState {
    /// Clauses that are the reason of a currently pruned state.
    fn locked_clauses(&self) -> Vec<bool> {
        let mut locked = vec![false; self.clauses.len()];
        for v in &self.vars {
            for (s, rec) in v.states.iter().enumerate() {
                if let Some(r) = rec.reason {
                    if !v.astates.contains(s) {
                        locked[r.index()] = true;
                    }
                }
            }
        }
        locked
    }

    /// Deletes the higher-LBD half of the learned clauses, sparing clauses
    /// with LBD <= 2 and locked clauses. Returns the number deleted.
    pub fn reduce_db(&mut self) -> usize {
        let locked = self.locked_clauses();
        let mut learned: Vec<ClauseId> = self.live_clauses().filter(|&c| self.clause(c).learned).collect();
        learned.sort_by(|&a, &b| {
            let (ca, cb) = (self.clause(a), self.clause(b));
            cb.lbd.cmp(&ca.lbd).then(cb.lits.len().cmp(&ca.lits.len())).then(a.cmp(&b))
        });
        let half = learned.len() / 2;
        let mut deleted = 0;
        for &c in &learned[..half] {
            if self.clause(c).lbd <= 2 || locked[c.index()] {
                continue;
            }
            self.delete_clause(c);
            deleted += 1;
        }
        self.stats.deleted += deleted as u64;
        deleted
    }

    /// Runs `reduce_db` if the policy says it is due.
    pub fn maybe_reduce(&mut self, policy: &mut ReduceDbPolicy) -> usize {
        if !policy.due(self.stats.conflicts) {
            return 0;
        }
        let n = self.reduce_db();
        policy.advance(self.stats.conflicts);
        n
    }
}
