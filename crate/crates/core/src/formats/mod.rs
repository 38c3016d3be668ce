//! Text formats: DCNF, NNF circuits, solver output, and binarization.
//!
//! External variable and state indices are 1-based everywhere.

mod binarize;
mod dcnf;
mod model;
mod nnf;

pub use binarize::{binarize, boolean_var};
pub use dcnf::{parse_dcnf, write_dcnf};
pub use model::{exit_code, parse_model, write_model};
pub use nnf::{parse_nnf, write_nnf, NnfDocument, NnfNode};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: expected {expected} {what}, found {found}")]
    CountMismatch {
        line: usize,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: state {state} of variable {var} outside 1..{card}")]
    StateOutOfRange {
        line: usize,
        var: usize,
        state: usize,
        card: usize,
    },
    #[error("line {line}: variable {var} outside 1..{count}")]
    VariableOutOfRange { line: usize, var: usize, count: usize },
    #[error("line {line}: cardinality of variable {var} is {card}, must be at least 2")]
    CardinalityBelowTwo { line: usize, var: usize, card: usize },
    #[error("line {line}: clause is missing its terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: invalid token '{token}'")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: node {node} refers to node {child}, which is not defined before it")]
    ForwardReference { line: usize, node: usize, child: usize },
    #[error("line {line}: node declares {declared} children but lists {found}")]
    ArityMismatch { line: usize, declared: usize, found: usize },
    #[error("line {line}: invalid literal '{token}'")]
    InvalidLiteral { line: usize, token: String },
}

/// Lines with 1-based numbers, skipping blanks and `c` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        let comment = t == "c" || t.starts_with("c ") || t.starts_with("c\t");
        (!t.is_empty() && !comment).then_some((i + 1, t))
    })
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| FormatError::InvalidToken {
        line,
        token: tok.to_string(),
    })
}

/// Parses a `d c1 .. cV` line.
fn parse_cards(line: usize, text: &str, count: usize) -> Result<Vec<usize>, FormatError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some("d") {
        return Err(FormatError::MalformedHeader {
            line,
            msg: "expected cardinality line 'd ...'".into(),
        });
    }
    let cards = toks.map(|t| parse_usize(line, t)).collect::<Result<Vec<_>, _>>()?;
    if cards.len() != count {
        return Err(FormatError::CountMismatch {
            line,
            what: "cardinalities",
            expected: count,
            found: cards.len(),
        });
    }
    if let Some((i, &c)) = cards.iter().enumerate().find(|(_, &c)| c < 2) {
        return Err(FormatError::CardinalityBelowTwo { line, var: i + 1, card: c });
    }
    Ok(cards)
}

fn write_cards(out: &mut String, cards: &[usize]) {
    out.push('d');
    for c in cards {
        out.push(' ');
        out.push_str(&c.to_string());
    }
    out.push('\n');
}

/// Parses `var:s1,s2,...` against the cardinalities.
fn parse_literal(line: usize, tok: &str, cards: &[usize]) -> Result<crate::logic::Literal, FormatError> {
    let bad = || FormatError::InvalidLiteral {
        line,
        token: tok.to_string(),
    };
    let (v, states) = tok.split_once(':').ok_or_else(bad)?;
    let var: usize = v.parse().map_err(|_| bad())?;
    if var == 0 || var > cards.len() {
        return Err(FormatError::VariableOutOfRange {
            line,
            var,
            count: cards.len(),
        });
    }
    let card = cards[var - 1];
    let mut set = crate::stateset::StateSet::empty(card);
    for s in states.split(',') {
        let state: usize = s.parse().map_err(|_| bad())?;
        if state == 0 || state > card {
            return Err(FormatError::StateOutOfRange { line, var, state, card });
        }
        set.insert(state - 1);
    }
    Ok(crate::logic::Literal::new(var - 1, set))
}

fn write_literal(out: &mut String, l: &crate::logic::Literal) {
    out.push_str(&(l.var + 1).to_string());
    out.push(':');
    for (k, s) in l.states.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&(s + 1).to_string());
    }
}
