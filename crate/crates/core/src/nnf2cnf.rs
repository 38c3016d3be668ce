//! NNF circuit to CNF compilation with entailment filtering.
//!
//! Every node gets a CNF: AND nodes concatenate their children's CNFs and OR
//! nodes take the product, merging one clause per child. Each clause is
//! offered to an incremental solver holding the node's clauses so far, and
//! is dropped when those clauses already entail it.

use crate::formats::{NnfDocument, NnfNode};
use crate::logic::{complement, normalize_clause, Clause, Cnf, Normalized};
use crate::solver::{Solver, SolverConfig, Status};
use thiserror::Error;

pub const DEFAULT_CLAUSE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("node {node} would produce {clauses} candidate clauses, over the cap of {cap}")]
    TooLarge { node: usize, clauses: u128, cap: usize },
}

struct NodeCnf {
    solver: Solver,
    clauses: Vec<Clause>,
}

impl NodeCnf {
    fn new(cards: &[usize]) -> NodeCnf {
        NodeCnf {
            solver: Solver::with_vars(cards, SolverConfig::default()),
            clauses: Vec::new(),
        }
    }

    /// Adds `raw` unless the clauses so far entail it.
    fn insert(&mut self, raw: &[crate::logic::Literal]) {
        let cards = &self.solver.cnf().cards;
        let clause = match normalize_clause(cards, raw).expect("circuit literals are valid") {
            Normalized::Tautology => return,
            Normalized::Empty => Clause::default(),
            Normalized::Clause(c) => c,
        };
        let negation: Vec<_> = clause.literals.iter().map(complement).collect();
        let r = self.solver.solve_assuming(&negation).expect("literals are valid");
        match r.status {
            Status::Unsat | Status::UnsatUnderAssumptions => {}
            Status::Sat => {
                self.solver.add_clause(&clause.literals).expect("literals are valid");
                self.clauses.push(clause);
            }
            Status::Unknown => unreachable!("no time limit set"),
        }
    }
}

/// Compiles the circuit rooted at its last node.
pub fn compile(doc: &NnfDocument) -> Result<Cnf, CompileError> {
    compile_with_cap(doc, DEFAULT_CLAUSE_CAP)
}

pub fn compile_with_cap(doc: &NnfDocument, cap: usize) -> Result<Cnf, CompileError> {
    let root = doc.root();
    let mut reachable = vec![false; doc.nodes.len()];
    reachable[root] = true;
    for i in (0..=root).rev() {
        if !reachable[i] {
            continue;
        }
        if let NnfNode::And(ch) | NnfNode::Or(ch) = &doc.nodes[i] {
            for &c in ch {
                reachable[c] = true;
            }
        }
    }

    let mut done: Vec<Option<Vec<Clause>>> = vec![None; doc.nodes.len()];
    for i in 0..=root {
        if !reachable[i] {
            continue;
        }
        let mut node = NodeCnf::new(&doc.cards);
        match &doc.nodes[i] {
            NnfNode::True => {}
            NnfNode::False => node.insert(&[]),
            NnfNode::Lit(l) => node.insert(std::slice::from_ref(l)),
            NnfNode::And(ch) => {
                let total: u128 = ch.iter().map(|&c| cnf_of(&done, c).len() as u128).sum();
                check_cap(i, total, cap)?;
                for &c in ch {
                    for clause in cnf_of(&done, c) {
                        node.insert(&clause.literals);
                    }
                }
            }
            NnfNode::Or(ch) => {
                let parts: Vec<&[Clause]> = ch.iter().map(|&c| cnf_of(&done, c)).collect();
                let total: u128 = parts.iter().map(|p| p.len() as u128).product();
                check_cap(i, total, cap)?;
                for_each_tuple(&parts, |tuple| {
                    let merged: Vec<_> = tuple.iter().flat_map(|c| c.literals.iter().cloned()).collect();
                    node.insert(&merged);
                });
            }
        }
        done[i] = Some(node.clauses);
    }
    let clauses = done[root].take().expect("root compiled");
    Ok(Cnf::new(doc.cards.clone(), clauses))
}

fn cnf_of(done: &[Option<Vec<Clause>>], i: usize) -> &[Clause] {
    done[i].as_deref().expect("children are compiled first")
}

fn check_cap(node: usize, clauses: u128, cap: usize) -> Result<(), CompileError> {
    if clauses > cap as u128 {
        return Err(CompileError::TooLarge { node, clauses, cap });
    }
    Ok(())
}

/// Visits every choice of one clause per part, first part most significant.
/// An empty part (a true child) yields no tuples; zero parts yield one empty
/// tuple, the empty clause of an OR without children.
fn for_each_tuple(parts: &[&[Clause]], mut f: impl FnMut(&[&Clause])) {
    if parts.iter().any(|p| p.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; parts.len()];
    let mut tuple: Vec<&Clause> = parts.iter().map(|p| &p[0]).collect();
    loop {
        f(&tuple);
        let mut k = parts.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < parts[k].len() {
                tuple[k] = &parts[k][idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = &parts[k][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_nnf, write_dcnf};

    fn compile_text(text: &str) -> String {
        write_dcnf(&compile(&parse_nnf(text).unwrap()).unwrap())
    }

    #[test]
    fn or_of_units_merges() {
        assert_eq!(compile_text("nnf 3 1\nd 3\nL 1:1\nL 1:2\nO 2 0 1\n"), "p dcnf 1 1\nd 3\n1:1,2 0\n");
    }

    #[test]
    fn or_into_tautology() {
        assert_eq!(compile_text("nnf 3 1\nd 3\nL 1:1,2\nL 1:3\nO 2 0 1\n"), "p dcnf 1 0\nd 3\n");
    }

    #[test]
    fn and_keeps_non_entailed() {
        assert_eq!(
            compile_text("nnf 3 1\nd 3\nL 1:1,2\nL 1:2,3\nA 2 0 1\n"),
            "p dcnf 1 2\nd 3\n1:1,2 0\n1:2,3 0\n"
        );
    }

    #[test]
    fn and_drops_entailed() {
        assert_eq!(compile_text("nnf 3 1\nd 3\nL 1:2\nL 1:2,3\nA 2 0 1\n"), "p dcnf 1 1\nd 3\n1:2 0\n");
    }

    #[test]
    fn constants() {
        assert_eq!(compile_text("nnf 1 0\nd\nT\n"), "p dcnf 0 0\nd\n");
        assert_eq!(compile_text("nnf 1 1\nd 2\nF\n"), "p dcnf 1 1\nd 2\n0\n");
        assert_eq!(compile_text("nnf 1 1\nd 2\nO 0\n"), "p dcnf 1 1\nd 2\n0\n");
        assert_eq!(compile_text("nnf 1 1\nd 2\nA 0\n"), "p dcnf 1 0\nd 2\n");
        // a false conjunct makes everything else redundant
        assert_eq!(compile_text("nnf 3 1\nd 2\nF\nL 1:1\nA 2 0 1\n"), "p dcnf 1 1\nd 2\n0\n");
        // an OR with a true child is true
        assert_eq!(compile_text("nnf 3 1\nd 2\nT\nL 1:1\nO 2 0 1\n"), "p dcnf 1 0\nd 2\n");
    }

    #[test]
    fn unreachable_nodes_are_ignored() {
        assert_eq!(compile_text("nnf 2 1\nd 2\nF\nL 1:2\n"), "p dcnf 1 1\nd 2\n1:2 0\n");
    }

    #[test]
    fn product_order_is_lexicographic() {
        // (x1 & y1) | (x2 & y2) over card 3
        // the last tuple, y{1,2}, follows from the first three
        let text = "nnf 7 2\nd 3 3\nL 1:1\nL 2:1\nA 2 0 1\nL 1:2\nL 2:2\nA 2 3 4\nO 2 2 5\n";
        assert_eq!(compile_text(text), "p dcnf 2 3\nd 3 3\n1:1,2 0\n1:1 2:2 0\n2:1 1:2 0\n");
    }

    #[test]
    fn cap_is_enforced() {
        let doc = parse_nnf("nnf 5 2\nd 3 3\nL 1:1\nL 2:1\nA 2 0 1\nA 2 0 1\nO 2 2 3\n").unwrap();
        assert!(matches!(
            compile_with_cap(&doc, 3),
            Err(CompileError::TooLarge { node: 4, clauses: 4, .. })
        ));
        assert!(compile_with_cap(&doc, 4).is_ok());
    }
}
