//! Discrete logic values: literals, clauses, CNFs and worlds.
//!
//! A literal over a variable `X` with `n` states is a nonempty proper subset
//! of `{0, .., n-1}`; it is satisfied by a world that assigns `X` one of those
//! states. Clauses are disjunctions of literals over distinct variables.
//! These are plain values; the solver interns them into its own arena.

use crate::stateset::StateSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("variable {var} has no assigned state")]
    MissingAssignment { var: usize },
    #[error("variable {var} is out of range ({count} variables)")]
    UnknownVariable { var: usize, count: usize },
    #[error("state set of variable {var} has width {width}, expected {card}")]
    InvalidState { var: usize, width: usize, card: usize },
    #[error("literal on variable {var} has no states")]
    InvalidLiteral { var: usize },
    #[error("resolution precondition violated: {0}")]
    Precondition(&'static str),
}

/// A discrete literal: a variable and the states it allows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub states: StateSet,
}

impl Literal {
    pub fn new(var: usize, states: StateSet) -> Literal {
        Literal { var, states }
    }

    /// Literal on `var` over `card` states from 0-based state ids.
    pub fn from_states<I: IntoIterator<Item = usize>>(var: usize, card: usize, states: I) -> Literal {
        Literal::new(var, StateSet::from_states(card, states))
    }

    /// The literal with the remaining states of the same variable.
    pub fn complement(&self) -> Literal {
        Literal::new(self.var, self.states.complement())
    }

    /// Number of states, `|l|`.
    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn satisfied_by(&self, state: usize) -> bool {
        self.states.contains(state)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{:?}", self.var + 1, self.states)
    }
}

/// Free-function form of [`Literal::complement`].
pub fn complement(lit: &Literal) -> Literal {
    lit.complement()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause { literals }
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// The literal on `var`, if any.
    pub fn literal_on(&self, var: usize) -> Option<&Literal> {
        self.literals.iter().find(|l| l.var == var)
    }

    /// Sum of literal sizes.
    pub fn size(&self) -> usize {
        clause_size(self)
    }

    pub fn satisfied_by(&self, world: &World) -> Result<bool, LogicError> {
        for lit in &self.literals {
            let state = world.get(lit.var).ok_or(LogicError::MissingAssignment { var: lit.var })?;
            if lit.satisfied_by(state) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Clause {
        Clause::new(iter.into_iter().collect())
    }
}

/// The size of a clause: the sum of `|l|` over its literals.
pub fn clause_size(c: &Clause) -> usize {
    c.literals.iter().map(Literal::size).sum()
}

/// A discrete CNF together with the cardinality of every variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub cards: Vec<usize>,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(cards: Vec<usize>, clauses: Vec<Clause>) -> Cnf {
        Cnf { cards, clauses }
    }

    pub fn var_count(&self) -> usize {
        self.cards.len()
    }

    pub fn size(&self) -> usize {
        self.clauses.iter().map(clause_size).sum()
    }

    /// Number of worlds, saturating.
    pub fn world_count(&self) -> u128 {
        self.cards.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128))
    }
}

/// A total assignment of one state per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct World(pub Vec<usize>);

impl World {
    pub fn get(&self, var: usize) -> Option<usize> {
        self.0.get(var).copied()
    }
}

/// Whether world `w` satisfies every clause of `cnf`.
pub fn evaluate(cnf: &Cnf, w: &World) -> Result<bool, LogicError> {
    if let Some(l) = cnf.clauses.iter().flat_map(|c| &c.literals).find(|l| w.get(l.var).is_none()) {
        return Err(LogicError::MissingAssignment { var: l.var });
    }
    for c in &cnf.clauses {
        if !c.satisfied_by(w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolvent {
    Clause(Clause),
    Tautology,
}

/// Resolves `a` and `b` over variable `x`.
///
/// The `x` literal of the resolvent is the intersection of the two `x`
/// literals (dropped when empty); the remaining literals are merged per
/// variable. A merged literal covering its whole domain makes the resolvent a
/// tautology.
pub fn resolve(a: &Clause, b: &Clause, x: usize) -> Result<Resolvent, LogicError> {
    let la = a
        .literal_on(x)
        .ok_or(LogicError::Precondition("first clause has no literal on the variable"))?;
    let lb = b
        .literal_on(x)
        .ok_or(LogicError::Precondition("second clause has no literal on the variable"))?;
    if la.states.is_subset(&lb.states) || lb.states.is_subset(&la.states) {
        return Err(LogicError::Precondition("one literal entails the other"));
    }
    let mut out: Vec<Literal> = Vec::with_capacity(a.len() + b.len());
    let meet = la.states.intersection(&lb.states);
    if !meet.is_empty() {
        out.push(Literal::new(x, meet));
    }
    for lit in a.literals.iter().chain(&b.literals).filter(|l| l.var != x) {
        match out.iter_mut().find(|l| l.var == lit.var) {
            Some(existing) => existing.states.union_with(&lit.states),
            None => out.push(lit.clone()),
        }
    }
    if out.iter().any(|l| l.states.is_full()) {
        return Ok(Resolvent::Tautology);
    }
    Ok(Resolvent::Clause(Clause::new(out)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Clause(Clause),
    Tautology,
    Empty,
}

/// Merges literals on the same variable and classifies the result.
pub fn normalize_clause(cards: &[usize], raw: &[Literal]) -> Result<Normalized, LogicError> {
    let mut out: Vec<Literal> = Vec::with_capacity(raw.len());
    for lit in raw {
        let card = *cards.get(lit.var).ok_or(LogicError::UnknownVariable {
            var: lit.var,
            count: cards.len(),
        })?;
        if lit.states.width() != card {
            return Err(LogicError::InvalidState {
                var: lit.var,
                width: lit.states.width(),
                card,
            });
        }
        if lit.states.is_empty() {
            return Err(LogicError::InvalidLiteral { var: lit.var });
        }
        match out.iter_mut().find(|l| l.var == lit.var) {
            Some(existing) => existing.states.union_with(&lit.states),
            None => out.push(lit.clone()),
        }
    }
    if out.is_empty() {
        Ok(Normalized::Empty)
    } else if out.iter().any(|l| l.states.is_full()) {
        Ok(Normalized::Tautology)
    } else {
        Ok(Normalized::Clause(Clause::new(out)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// 1-based literal helper for readable tests.
    fn lit(var: usize, card: usize, states: &[usize]) -> Literal {
        Literal::from_states(var, card, states.iter().map(|s| s - 1))
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

    #[test]
    fn complement_examples() {
        assert_eq!(lit(0, 4, &[1, 3]).complement(), lit(0, 4, &[2, 4]));
        assert_eq!(lit(0, 2, &[1]).complement(), lit(0, 2, &[2]));
        assert_eq!(complement(&lit(0, 3, &[1, 2])), lit(0, 3, &[3]));
    }

    #[test]
    fn resolve_examples() {
        // x{1,2} v y{1}  with  x{2,3} v z{1}
        let a = Clause::new(vec![lit(0, 3, &[1, 2]), lit(1, 3, &[1])]);
        let b = Clause::new(vec![lit(0, 3, &[2, 3]), lit(2, 3, &[1])]);
        assert_eq!(
            resolve(&a, &b, 0).unwrap(),
            Resolvent::Clause(Clause::new(vec![lit(0, 3, &[2]), lit(1, 3, &[1]), lit(2, 3, &[1])]))
        );

        // Boolean: y{1} v y{2} merges to the full domain
        let a = Clause::new(vec![lit(0, 2, &[1]), lit(1, 2, &[1])]);
        let b = Clause::new(vec![lit(0, 2, &[2]), lit(1, 2, &[2])]);
        assert_eq!(resolve(&a, &b, 0).unwrap(), Resolvent::Tautology);

        // unit resolution with x{2,4} infers y{1,2}
        let a = Clause::new(vec![lit(0, 4, &[1, 3]), lit(1, 4, &[1, 2])]);
        let b = Clause::new(vec![lit(0, 4, &[2, 4])]);
        assert_eq!(
            resolve(&a, &b, 0).unwrap(),
            Resolvent::Clause(Clause::new(vec![lit(1, 4, &[1, 2])]))
        );
    }

    #[test]
    fn resolve_rejects_entailing_literals() {
        let a = Clause::new(vec![lit(0, 3, &[1])]);
        let b = Clause::new(vec![lit(0, 3, &[1, 2])]);
        assert!(matches!(resolve(&a, &b, 0), Err(LogicError::Precondition(_))));
        assert!(matches!(resolve(&b, &a, 0), Err(LogicError::Precondition(_))));
        assert!(resolve(&a, &b, 1).is_err());
    }

    #[test]
    fn clause_size_examples() {
        let c = Clause::new(vec![lit(0, 4, &[1, 3, 4]), lit(1, 3, &[1, 2])]);
        assert_eq!(clause_size(&c), 5);
        assert_eq!(clause_size(&Clause::new(vec![lit(0, 3, &[2])])), 1);
        assert_eq!(clause_size(&Clause::default()), 0);
    }

    #[test]
    fn evaluate_examples() {
        let d = small_example();
        assert!(evaluate(&d, &World(vec![1, 0])).unwrap());
        assert!(!evaluate(&d, &World(vec![0, 0])).unwrap());
        assert!(evaluate(&Cnf::new(vec![3], vec![]), &World(vec![2])).unwrap());
        assert_eq!(evaluate(&d, &World(vec![1])), Err(LogicError::MissingAssignment { var: 1 }));
    }

    #[test]
    fn normalize_examples() {
        let cards = [3];
        assert_eq!(
            normalize_clause(&cards, &[lit(0, 3, &[1]), lit(0, 3, &[2])]).unwrap(),
            Normalized::Clause(Clause::new(vec![lit(0, 3, &[1, 2])]))
        );
        assert_eq!(
            normalize_clause(&cards, &[lit(0, 3, &[1]), lit(0, 3, &[2, 3])]).unwrap(),
            Normalized::Tautology
        );
        assert_eq!(normalize_clause(&cards, &[]).unwrap(), Normalized::Empty);
        assert!(matches!(
            normalize_clause(&cards, &[lit(0, 4, &[4])]),
            Err(LogicError::InvalidState { .. })
        ));
        assert_eq!(
            normalize_clause(&cards, &[Literal::new(0, StateSet::empty(3))]),
            Err(LogicError::InvalidLiteral { var: 0 })
        );
    }

    fn arb_literal(vars: usize, card: usize) -> impl Strategy<Value = Literal> {
        (0..vars, 1u64..(1u64 << card) - 1)
            .prop_map(move |(v, mask)| Literal::from_states(v, card, (0..card).filter(|i| mask >> i & 1 == 1)))
    }

    fn arb_clause(vars: usize, card: usize) -> impl Strategy<Value = Clause> {
        proptest::collection::vec(arb_literal(vars, card), 1..4).prop_filter_map("tautology", move |raw| {
            match normalize_clause(&vec![card; vars], &raw).ok()? {
                Normalized::Clause(c) => Some(c),
                _ => None,
            }
        })
    }

    fn all_worlds(vars: usize, card: usize) -> impl Iterator<Item = World> {
        (0..card.pow(vars as u32)).map(move |mut code| {
            let mut w = vec![0; vars];
            for slot in w.iter_mut() {
                *slot = code % card;
                code /= card;
            }
            World(w)
        })
    }

    proptest! {
        #[test]
        fn complement_is_involutive(l in arb_literal(3, 5)) {
            prop_assert_eq!(l.complement().complement(), l.clone());
            prop_assert!(l.complement().states.is_proper());
        }

        #[test]
        fn resolvent_is_sound(card in 2usize..=4, seed_a in arb_clause(4, 4), seed_b in arb_clause(4, 4)) {
            // re-map to the drawn cardinality by truncating states
            let squash = |c: &Clause| -> Option<Clause> {
                let raw: Vec<Literal> = c.literals.iter().map(|l| {
                    Literal::from_states(l.var, card, l.states.iter().filter(|&s| s < card))
                }).filter(|l| !l.states.is_empty()).collect();
                match normalize_clause(&[card; 4], &raw).ok()? { Normalized::Clause(c) => Some(c), _ => None }
            };
            let (Some(a), Some(b)) = (squash(&seed_a), squash(&seed_b)) else { return Ok(()); };
            for x in 0..4 {
                let Ok(r) = resolve(&a, &b, x) else { continue };
                let Resolvent::Clause(r) = r else { continue };
                for w in all_worlds(4, card) {
                    if a.satisfied_by(&w).unwrap() && b.satisfied_by(&w).unwrap() {
                        prop_assert!(r.satisfied_by(&w).unwrap());
                    }
                }
            }
        }

        #[test]
        fn boolean_clause_size_is_length(c in arb_clause(4, 2)) {
            prop_assert_eq!(clause_size(&c), c.len());
        }
    }
}
