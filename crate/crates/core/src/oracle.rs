//! Brute-force reference implementations for testing.
//!
//! Nothing here touches the propagation or learning code: worlds are
//! enumerated directly and unit resolution is a repeated scan over all
//! clauses.

use crate::logic::{Clause, Cnf, Literal, World};
use crate::stateset::StateSet;
use thiserror::Error;

/// Largest number of worlds the enumerating oracles accept.
pub const WORLD_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} worlds exceed the enumeration limit of {WORLD_LIMIT}")]
    TooLarge(u128),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub sat: bool,
    pub count: u64,
    pub witness: Option<World>,
}

fn satisfies_clause(c: &Clause, w: &[usize]) -> bool {
    c.literals.iter().any(|l| l.states.contains(w[l.var]))
}

fn satisfies(cnf: &Cnf, w: &[usize]) -> bool {
    cnf.clauses.iter().all(|c| satisfies_clause(c, w))
}

fn worlds(cards: &[usize]) -> Result<impl Iterator<Item = Vec<usize>> + '_, OracleError> {
    let total: u128 = cards.iter().map(|&c| c as u128).product();
    if total > WORLD_LIMIT {
        return Err(OracleError::TooLarge(total));
    }
    let mut next = Some(vec![0usize; cards.len()]);
    Ok(std::iter::from_fn(move || {
        let current = next.take()?;
        let mut w = current.clone();
        for (i, &c) in cards.iter().enumerate() {
            w[i] += 1;
            if w[i] < c {
                next = Some(w);
                break;
            }
            w[i] = 0;
        }
        Some(current)
    }))
}

/// Counts models by enumerating every world.
pub fn brute_force(cnf: &Cnf) -> Result<BruteForce, OracleError> {
    let mut count = 0;
    let mut witness = None;
    for w in worlds(&cnf.cards)? {
        if satisfies(cnf, &w) {
            count += 1;
            if witness.is_none() {
                witness = Some(World(w));
            }
        }
    }
    Ok(BruteForce {
        sat: count > 0,
        count,
        witness,
    })
}

/// True iff every model of `cnf` satisfies `clause`.
pub fn check_implied(cnf: &Cnf, clause: &Clause) -> Result<bool, OracleError> {
    for w in worlds(&cnf.cards)? {
        if satisfies(cnf, &w) && !satisfies_clause(clause, &w) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub active: Vec<StateSet>,
    pub contradiction: bool,
}

/// Unit-resolution fixpoint of `cnf` plus `decisions`.
///
/// Starting from the decisions, each pass scans every clause. A clause whose
/// literals all miss the active states is a contradiction; a clause with a
/// single literal meeting the active states shrinks that variable to the
/// intersection. Passes repeat until nothing changes.
pub fn ur_closure(cnf: &Cnf, decisions: &[Literal]) -> ClosureResult {
    let mut active: Vec<StateSet> = cnf.cards.iter().map(|&c| StateSet::full(c)).collect();
    for d in decisions {
        active[d.var].intersect_with(&d.states);
    }
    let clauses: Vec<Vec<(usize, StateSet)>> = cnf.clauses.iter().filter_map(merge_by_variable).collect();
    let mut contradiction = active.iter().any(|a| a.is_empty());
    let mut changed = true;
    while changed && !contradiction {
        changed = false;
        for c in &clauses {
            let mut open = c.iter().filter(|(v, s)| s.intersects(&active[*v]));
            match (open.next(), open.next()) {
                (None, _) => {
                    contradiction = true;
                    break;
                }
                (Some((v, s)), None) if !active[*v].is_subset(s) => {
                    active[*v].intersect_with(s);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    ClosureResult { active, contradiction }
}

/// One state set per variable; `None` for clauses covering a whole domain.
fn merge_by_variable(c: &Clause) -> Option<Vec<(usize, StateSet)>> {
    let mut merged: Vec<(usize, StateSet)> = Vec::new();
    for l in &c.literals {
        match merged.iter_mut().find(|(v, _)| *v == l.var) {
            Some((_, s)) => s.union_with(&l.states),
            None => merged.push((l.var, l.states.clone())),
        }
    }
    if merged.iter().any(|(_, s)| s.is_full()) {
        None
    } else {
        Some(merged)
    }
}
