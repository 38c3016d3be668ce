use dsat::formats::{binarize, boolean_var};
use dsat::gen::{generate, GenSpec};
use dsat::logic::evaluate;
use dsat::oracle::{brute_force, check_implied, ur_closure};
use dsat::propagate::SolverState;
use dsat::solver::{solve, solve_default};
use dsat::{Clause, Cnf, Literal, Solver, SolverConfig, StateSet, Status, World};
use proptest::prelude::*;

fn literal_from_bits(var: usize, card: usize, bits: u64) -> Literal {
    let mut states: Vec<usize> = (0..card).filter(|s| bits >> s & 1 == 1).collect();
    if states.is_empty() {
        states.push((bits >> 32) as usize % card);
    }
    Literal::from_states(var, card, states)
}

fn arb_cnf(vars: std::ops::RangeInclusive<usize>, max_card: usize, clauses: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Cnf> {
    prop::collection::vec(2..=max_card, vars).prop_flat_map(move |cards| {
        let n = cards.len();
        let clause = prop::collection::vec((0..n, any::<u64>()), 1..=3.min(n));
        (Just(cards), prop::collection::vec(clause, clauses.clone())).prop_map(|(cards, raw)| {
            let clauses = raw
                .into_iter()
                .map(|lits| {
                    let mut seen = Vec::new();
                    let mut out = Vec::new();
                    for (v, bits) in lits {
                        if !seen.contains(&v) {
                            seen.push(v);
                            out.push(literal_from_bits(v, cards[v], bits));
                        }
                    }
                    Clause::new(out)
                })
                .collect();
            Cnf::new(cards, clauses)
        })
    })
}

fn arb_with_decisions() -> impl Strategy<Value = (Cnf, Vec<(usize, u64)>)> {
    (
        arb_cnf(2..=6, 5, 1..=20),
        prop::collection::vec((any::<usize>(), any::<u64>()), 0..6),
    )
}

fn all_worlds(cards: &[usize]) -> Vec<World> {
    let mut out = vec![Vec::new()];
    for &c in cards {
        out = out
            .into_iter()
            .flat_map(|w| (0..c).map(move |s| [w.clone(), vec![s]].concat()))
            .collect();
    }
    out.into_iter().map(World).collect()
}

fn actives(s: &SolverState) -> Vec<StateSet> {
    s.vars.iter().map(|v| v.astates.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn interning_is_idempotent((cnf, picks) in arb_with_decisions()) {
        let mut s = SolverState::from_cnf(&cnf).unwrap();
        for (v, bits) in picks {
            let v = v % cnf.var_count();
            let l = literal_from_bits(v, cnf.cards[v], bits);
            if l.states.is_full() {
                continue;
            }
            let a = s.intern(v, &l.states);
            prop_assert_eq!(a, s.intern(v, &l.states));
            prop_assert_eq!(&s.literal(a).states, &l.states);
        }
    }

    #[test]
    fn decisions_keep_engine_invariants((cnf, picks) in arb_with_decisions()) {
        let mut s = SolverState::from_cnf(&cnf).unwrap();
        prop_assume!(!s.has_empty_clause && s.assert_unit_clauses());
        let root = actives(&s);
        let mut history = vec![root.clone()];
        let mut made = Vec::new();
        for (v, bits) in picks {
            let v = v % cnf.var_count();
            let d = literal_from_bits(v, cnf.cards[v], bits);
            if s.implied_states(v, &d.states) || s.falsified_states(v, &d.states) {
                continue;
            }
            made.push(d.clone());
            if !s.decide(v, &d.states) {
                prop_assert!(ur_closure(&cnf, &made).contradiction);
                break;
            }
            s.check_watches().map_err(TestCaseError::fail)?;
            let closure = ur_closure(&cnf, &made);
            prop_assert!(!closure.contradiction);
            prop_assert_eq!(&actives(&s), &closure.active);
            // level-0 prunes stay pruned
            for (a, r) in actives(&s).iter().zip(&root) {
                prop_assert!(a.is_subset(r));
            }
            history.push(actives(&s));
        }
        // undo restores every earlier level exactly
        while s.dlevel() > 0 {
            s.undecide();
            let level = s.dlevel() as usize;
            prop_assert_eq!(&actives(&s), &history[level]);
        }
        prop_assert_eq!(actives(&s), root);
    }

    #[test]
    fn closure_is_sound_and_order_free((cnf, picks) in arb_with_decisions(), rot in any::<usize>()) {
        let decisions: Vec<Literal> = picks
            .iter()
            .map(|&(v, bits)| {
                let v = v % cnf.var_count();
                literal_from_bits(v, cnf.cards[v], bits)
            })
            .collect();
        let c = ur_closure(&cnf, &decisions);
        let mut rotated = cnf.clauses.clone();
        if !rotated.is_empty() {
            let k = rot % rotated.len();
            rotated.rotate_left(k);
            rotated.reverse();
        }
        let other = ur_closure(&Cnf::new(cnf.cards.clone(), rotated), &decisions);
        // where a contradiction stops the scan depends on the order
        prop_assert_eq!(other.contradiction, c.contradiction);
        if !c.contradiction {
            prop_assert_eq!(&other.active, &c.active);
        }
        for w in all_worlds(&cnf.cards) {
            let fits = decisions.iter().all(|d| d.states.contains(w.0[d.var]));
            if fits && evaluate(&cnf, &w).unwrap() {
                prop_assert!(!c.contradiction);
                for (v, a) in c.active.iter().enumerate() {
                    prop_assert!(a.contains(w.0[v]));
                }
            }
        }
    }

    #[test]
    fn binarized_models_pick_one_state(cnf in arb_cnf(1..=3, 3, 0..=6)) {
        let b = binarize(&cnf);
        prop_assert_eq!(brute_force(&b).unwrap().sat, brute_force(&cnf).unwrap().sat);
        prop_assert_eq!(brute_force(&b).unwrap().count, brute_force(&cnf).unwrap().count);
        for w in all_worlds(&b.cards) {
            if !evaluate(&b, &w).unwrap() {
                continue;
            }
            for (v, &card) in cnf.cards.iter().enumerate() {
                let on = (0..card).filter(|&i| w.0[boolean_var(&cnf.cards, v, i)] == 1).count();
                prop_assert_eq!(on, 1);
            }
        }
    }

    #[test]
    fn solver_agrees_with_enumeration(cnf in arb_cnf(1..=6, 5, 0..=20), minimize in any::<bool>()) {
        let config = SolverConfig { minimize, record_learned: true, ..SolverConfig::default() };
        let mut solver = Solver::new(&cnf, config).unwrap();
        let r = solver.solve();
        let truth = brute_force(&cnf).unwrap();
        prop_assert_eq!(r.status == Status::Sat, truth.sat);
        if let Some(w) = &r.model {
            prop_assert!(evaluate(&cnf, w).unwrap());
        }
        for l in solver.learned_log() {
            prop_assert!(check_implied(&cnf, &l.clause).unwrap());
            prop_assert_eq!(l.at_conflict_level, 1);
            prop_assert!(l.assertion_level < l.conflict_level);
        }
    }

    #[test]
    fn stronger_assumptions_stay_sat(cnf in arb_cnf(2..=5, 4, 0..=12), picks in prop::collection::vec((any::<usize>(), any::<u64>(), any::<u64>()), 1..4)) {
        let mut solver = Solver::new(&cnf, SolverConfig::default()).unwrap();
        let mut weak = Vec::new();
        let mut strong = Vec::new();
        for (v, a, b) in picks {
            let v = v % cnf.var_count();
            let small = literal_from_bits(v, cnf.cards[v], a);
            let extra = literal_from_bits(v, cnf.cards[v], b);
            strong.push(Literal::new(v, small.states.union(&extra.states)));
            weak.push(small);
        }
        let r = solver.solve_assuming(&weak).unwrap();
        if r.status == Status::Sat {
            let w = r.model.unwrap();
            prop_assert!(weak.iter().all(|l| l.states.contains(w.0[l.var])));
            prop_assert_eq!(solver.solve_assuming(&strong).unwrap().status, Status::Sat);
        }
    }

    #[test]
    fn generated_clauses_are_well_formed(n in 3usize..30, m in 0usize..60, c in 2usize..70, seed in any::<u64>()) {
        let cnf = generate(&GenSpec { n, m, c, seed }).unwrap();
        prop_assert_eq!(cnf.clauses.len(), m);
        for cl in &cnf.clauses {
            prop_assert_eq!(cl.literals.len(), 3);
            let mut vars: Vec<usize> = cl.literals.iter().map(|l| l.var).collect();
            vars.sort();
            vars.dedup();
            prop_assert_eq!(vars.len(), 3);
            for l in &cl.literals {
                prop_assert!(!l.states.is_empty() && !l.states.is_full());
            }
        }
    }
}

#[test]
fn clause_deletion_keeps_answers() {
    let mut deleted = 0;
    for (n, m, seed) in [(70, 567, 0), (70, 567, 1), (70, 567, 2), (100, 810, 1)] {
        let cnf = generate(&GenSpec { n, m, c: 4, seed }).unwrap();
        let with = solve_default(&cnf).unwrap();
        let without = solve(
            &cnf,
            SolverConfig {
                reduce: false,
                ..SolverConfig::default()
            },
        )
        .unwrap();
        assert_eq!(with.status, without.status, "seed {seed}");
        deleted += with.stats.deleted;
    }
    assert!(deleted > 0, "no reduction ran, so the check is vacuous");
}
