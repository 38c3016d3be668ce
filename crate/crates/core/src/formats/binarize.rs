use crate::logic::{Clause, Cnf, Literal};

/// The Boolean variable standing for state `state` of variable `var`.
pub fn boolean_var(cards: &[usize], var: usize, state: usize) -> usize {
    cards[..var].iter().sum::<usize>() + state
}

/// Exactly-one binarization.
///
/// State `i` of variable `X` becomes the card-2 variable `offset(X) + i`.
/// A Boolean variable is true in its state 2 and false in its state 1. The
/// output lists the mapped clauses, then one at-least-one clause per
/// variable, then the pairwise at-most-one clauses of every variable.
pub fn binarize(cnf: &Cnf) -> Cnf {
    let offsets: Vec<usize> = cnf
        .cards
        .iter()
        .scan(0, |acc, &c| {
            let o = *acc;
            *acc += c;
            Some(o)
        })
        .collect();
    let total: usize = cnf.cards.iter().sum();
    let pos = |b: usize| Literal::from_states(b, 2, [1]);
    let neg = |b: usize| Literal::from_states(b, 2, [0]);

    let mut clauses: Vec<Clause> = cnf
        .clauses
        .iter()
        .map(|c| {
            c.literals
                .iter()
                .flat_map(|l| {
                    let o = offsets[l.var];
                    l.states.iter().map(move |s| o + s)
                })
                .map(pos)
                .collect()
        })
        .collect();
    for (v, &card) in cnf.cards.iter().enumerate() {
        clauses.push((0..card).map(|i| pos(offsets[v] + i)).collect());
    }
    for (v, &card) in cnf.cards.iter().enumerate() {
        for i in 0..card {
            for j in i + 1..card {
                clauses.push(Clause::new(vec![neg(offsets[v] + i), neg(offsets[v] + j)]));
            }
        }
    }
    Cnf::new(vec![2; total], clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_dcnf, write_dcnf};

    #[test]
    fn small_example_listing() {
        let cnf = parse_dcnf("p dcnf 2 2\nd 4 4\n1:1,3 2:1,2 0\n1:2,4 0\n").unwrap();
        let b = binarize(&cnf);
        assert_eq!(b.var_count(), 8);
        assert_eq!(b.clauses.len(), 16);
        let text = write_dcnf(&b);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p dcnf 8 16");
        assert_eq!(lines[2], "1:2 3:2 5:2 6:2 0");
        assert_eq!(lines[3], "2:2 4:2 0");
        assert_eq!(lines[4], "1:2 2:2 3:2 4:2 0");
        assert_eq!(lines[5], "5:2 6:2 7:2 8:2 0");
        assert_eq!(lines[6], "1:1 2:1 0");
        assert_eq!(lines[17], "7:1 8:1 0");
    }

    #[test]
    fn boolean_input_gains_exactly_one() {
        let cnf = parse_dcnf("p dcnf 1 1\nd 2\n1:2 0\n").unwrap();
        let b = binarize(&cnf);
        assert_eq!(write_dcnf(&b), "p dcnf 2 3\nd 2 2\n2:2 0\n1:2 2:2 0\n1:1 2:1 0\n");
    }

    #[test]
    fn added_clause_count() {
        let cnf = Cnf::new(vec![2, 3, 5], vec![]);
        let b = binarize(&cnf);
        let expected: usize = cnf.cards.iter().map(|k| 1 + k * (k - 1) / 2).sum();
        assert_eq!(b.clauses.len(), expected);
        assert_eq!(boolean_var(&cnf.cards, 2, 4), 9);
    }
}
