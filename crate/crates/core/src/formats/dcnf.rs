use super::{content_lines, parse_cards, parse_literal, parse_usize, write_cards, write_literal, FormatError};
use crate::logic::{Clause, Cnf};

/// Parses DCNF text:
///
/// ```text
/// c comment
/// p dcnf <vars> <clauses>
/// d <card1> ... <cardV>
/// 1:1,3 2:1,2 0
/// 1:2,4 0
/// ```
///
/// Clauses are token streams ended by `0` and may span lines. Literals are
/// kept as written; duplicate variables are merged later by normalization.
pub fn parse_dcnf(text: &str) -> Result<Cnf, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MalformedHeader {
        line: 1,
        msg: "missing 'p dcnf' header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "dcnf" {
        return Err(FormatError::MalformedHeader {
            line: hline,
            msg: format!("expected 'p dcnf <vars> <clauses>', got '{header}'"),
        });
    }
    let nvars = parse_usize(hline, toks[2])?;
    let nclauses = parse_usize(hline, toks[3])?;
    let (dline, dtext) = lines.next().ok_or(FormatError::MalformedHeader {
        line: hline + 1,
        msg: "missing cardinality line".into(),
    })?;
    let cards = parse_cards(dline, dtext, nvars)?;

    let mut clauses = Vec::with_capacity(nclauses);
    let mut current: Vec<crate::logic::Literal> = Vec::new();
    let mut last_line = dline;
    for (lno, text) in lines {
        last_line = lno;
        for tok in text.split_whitespace() {
            if tok == "0" {
                if clauses.len() == nclauses {
                    return Err(FormatError::CountMismatch {
                        line: lno,
                        what: "clauses",
                        expected: nclauses,
                        found: nclauses + 1,
                    });
                }
                clauses.push(Clause::new(std::mem::take(&mut current)));
            } else {
                if clauses.len() == nclauses {
                    return Err(FormatError::CountMismatch {
                        line: lno,
                        what: "clauses",
                        expected: nclauses,
                        found: nclauses + 1,
                    });
                }
                current.push(parse_literal(lno, tok, &cards)?);
            }
        }
    }
    if !current.is_empty() {
        return Err(FormatError::MissingTerminator { line: last_line });
    }
    if clauses.len() != nclauses {
        return Err(FormatError::CountMismatch {
            line: last_line,
            what: "clauses",
            expected: nclauses,
            found: clauses.len(),
        });
    }
    Ok(Cnf::new(cards, clauses))
}

/// Canonical DCNF text: one clause per line, states ascending.
pub fn write_dcnf(cnf: &Cnf) -> String {
    let mut out = format!("p dcnf {} {}\n", cnf.var_count(), cnf.clauses.len());
    write_cards(&mut out, &cnf.cards);
    for c in &cnf.clauses {
        for l in &c.literals {
            write_literal(&mut out, l);
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Literal;
    use proptest::prelude::*;

    const SMALL_EXAMPLE: &str = "p dcnf 2 2\nd 4 4\n1:1,3 2:1,2 0\n1:2,4 0\n";

    #[test]
    fn parses_small_example() {
        let cnf = parse_dcnf(SMALL_EXAMPLE).unwrap();
        assert_eq!(cnf.cards, vec![4, 4]);
        assert_eq!(cnf.clauses.len(), 2);
        assert_eq!(cnf.clauses[0].literals[0], Literal::from_states(0, 4, [0, 2]));
        assert_eq!(cnf.clauses[0].literals[1], Literal::from_states(1, 4, [0, 1]));
        assert_eq!(cnf.clauses[1].literals, vec![Literal::from_states(0, 4, [1, 3])]);
        assert_eq!(write_dcnf(&cnf), SMALL_EXAMPLE);
    }

    #[test]
    fn comments_blank_lines_and_spanning_clauses() {
        let text = "c hello\n\np dcnf 2 2\nc between\nd 4 4\n1:3,1\n 2:2,1 0 1:4,2\n0\n";
        let cnf = parse_dcnf(text).unwrap();
        assert_eq!(write_dcnf(&cnf), SMALL_EXAMPLE);
    }

    #[test]
    fn no_clauses() {
        let cnf = parse_dcnf("p dcnf 1 0\nd 2").unwrap();
        assert_eq!(cnf.cards, vec![2]);
        assert!(cnf.clauses.is_empty());
        assert_eq!(write_dcnf(&cnf), "p dcnf 1 0\nd 2\n");
    }

    #[test]
    fn errors_carry_lines() {
        use FormatError::*;
        assert!(matches!(
            parse_dcnf("p dcnf 1 0\nd 1"),
            Err(CardinalityBelowTwo { line: 2, var: 1, card: 1 })
        ));
        assert!(matches!(parse_dcnf("p cnf 1 0\nd 2"), Err(MalformedHeader { line: 1, .. })));
        assert!(matches!(parse_dcnf(""), Err(MalformedHeader { .. })));
        assert!(matches!(parse_dcnf("p dcnf 1 0\nd 2 2"), Err(CountMismatch { line: 2, .. })));
        assert!(matches!(
            parse_dcnf("p dcnf 1 1\nd 3\n1:4 0"),
            Err(StateOutOfRange { line: 3, state: 4, .. })
        ));
        assert!(matches!(parse_dcnf("p dcnf 1 1\nd 3\n1:0 0"), Err(StateOutOfRange { line: 3, .. })));
        assert!(matches!(
            parse_dcnf("p dcnf 1 1\nd 3\n2:1 0"),
            Err(VariableOutOfRange { line: 3, .. })
        ));
        assert!(matches!(
            parse_dcnf("p dcnf 1 1\nd 3\n1:1\n1:2"),
            Err(MissingTerminator { line: 4 })
        ));
        assert!(matches!(
            parse_dcnf("p dcnf 1 2\nd 3\n1:1 0"),
            Err(CountMismatch { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            parse_dcnf("p dcnf 1 1\nd 3\n1:1 0\n1:2 0"),
            Err(CountMismatch { line: 4, .. })
        ));
        assert!(matches!(parse_dcnf("p dcnf 1 1\nd 3\n1:x 0"), Err(InvalidLiteral { line: 3, .. })));
        assert!(matches!(parse_dcnf("p dcnf 1 1\nd 3\n1 0"), Err(InvalidLiteral { line: 3, .. })));
    }

    #[test]
    fn sorts_states_and_keeps_empty_clause() {
        let cnf = parse_dcnf("p dcnf 1 2\nd 3\n1:3,1 0\n0\n").unwrap();
        assert_eq!(write_dcnf(&cnf), "p dcnf 1 2\nd 3\n1:1,3 0\n0\n");
    }

    fn arb_cnf() -> impl Strategy<Value = Cnf> {
        proptest::collection::vec(2usize..7, 1..5).prop_flat_map(|cards| {
            let n = cards.len();
            let lit = (0..n, any::<u64>()).prop_map({
                let cards = cards.clone();
                move |(v, bits)| {
                    let card = cards[v];
                    let mut states: Vec<usize> = (0..card).filter(|s| bits >> s & 1 == 1).collect();
                    if states.is_empty() {
                        states.push((bits as usize >> 8) % card);
                    }
                    Literal::from_states(v, card, states)
                }
            });
            let clause = proptest::collection::vec(lit, 0..4).prop_map(Clause::new);
            proptest::collection::vec(clause, 0..6).prop_map(move |clauses| Cnf::new(cards.clone(), clauses))
        })
    }

    proptest! {
        #[test]
        fn round_trip(cnf in arb_cnf()) {
            let text = write_dcnf(&cnf);
            let back = parse_dcnf(&text).unwrap();
            prop_assert_eq!(&back, &cnf);
            prop_assert_eq!(write_dcnf(&back), text);
        }
    }
}
