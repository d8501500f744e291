//! Property tests over random propositional knowledge bases.

mod support;

use mucal::agent::Engine;
use mucal::reason::{Clause, DeltaOutcome, Evidence, ProbTable};
use mucal::strength::{check_subsumption, BeliefStore, Origin, RsbOutcome, StoredBelief};
use mucal::{parse_kb, print_formula, Formula, KbDocument, Rational};
use proptest::prelude::*;
use rand::Rng;
use support::{random_kb, rng, term, KbShape};

fn kb_from_seed(seed: u64) -> (KbDocument, Vec<Formula>) {
    let mut r = rng(seed);
    let shape = KbShape {
        atoms: r.gen_range(2..=5),
        axioms: r.gen_range(1..=3),
        candidates: r.gen_range(0..=3),
        probabilities: r.gen_bool(0.5),
        beliefs: r.gen_bool(0.5),
    };
    let (text, goals) = random_kb(&mut r, &shape);
    let kb = parse_kb(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let goals = goals.iter().map(|g| kb.formula(g).unwrap()).collect();
    (kb, goals)
}

const LEVEL_KB: &str = "
    (const a Agent) (const t0 Moment) (const now Moment) (prior t0 now)
    (const p Boolean) (const q Boolean) (const r Boolean)
";

fn stored(kb: &KbDocument, f: &str, moment: &str, level: u8) -> StoredBelief {
    StoredBelief {
        agent: term("a"),
        moment: term(moment),
        formula: kb.formula(f).unwrap(),
        level,
        origin: Origin::Classified,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>()) {
        let (kb, goals) = kb_from_seed(seed);
        let all = kb.axioms.iter().map(|a| &a.formula)
            .chain(kb.candidates.iter().map(|c| &c.formula))
            .chain(goals.iter());
        for f in all {
            let back = kb.formula(&print_formula(f)).unwrap();
            prop_assert_eq!(back.alpha_normalize(), f.alpha_normalize());
        }
    }

    #[test]
    fn belief_rule_takes_the_weakest_level(s1 in 1u8..=5, s2 in 1u8..=5, u in 0u8..=4) {
        let kb = parse_kb(LEVEL_KB).unwrap();
        let e = Engine::new(&kb);
        let prem = [stored(&kb, "p", "t0", s1), stored(&kb, "(implies p q)", "now", s2)];
        let out = e.infer_rsb(&prem, &kb.formula("q").unwrap(), &term("now"), u).unwrap();
        match out {
            RsbOutcome::Fired(b) => {
                prop_assert!(s1.abs_diff(s2) <= u);
                prop_assert_eq!(b.level, s1.min(s2));
            }
            RsbOutcome::Blocked { spread, .. } => {
                prop_assert!(spread > u);
                prop_assert_eq!(spread, s1.abs_diff(s2));
            }
        }
    }

    #[test]
    fn store_never_holds_a_contradiction(ops in prop::collection::vec((0usize..6, 1u8..=5), 0..24)) {
        let kb = parse_kb(LEVEL_KB).unwrap();
        let forms = ["p", "(not p)", "q", "(not q)", "(and p r)", "(not (and p r))"];
        let mut store = BeliefStore::default();
        for (i, level) in ops {
            store.offer(stored(&kb, forms[i], "now", level));
            prop_assert!(store.is_consistent());
        }
    }

    #[test]
    fn more_reasonable_is_irreflexive_and_asymmetric(seed in any::<u64>()) {
        let (kb, goals) = kb_from_seed(seed);
        let e = Engine::new(&kb);
        let tb: ProbTable<Rational> = ProbTable::from_kb(&kb);
        let (a, t) = (term("a"), term("now"));
        for f in &goals {
            prop_assert!(!e.more_reasonable(&tb, &a, &t, f, f).unwrap().holds);
            for g in &goals {
                let fg = e.more_reasonable(&tb, &a, &t, f, g).unwrap().holds;
                let gf = e.more_reasonable(&tb, &a, &t, g, f).unwrap().holds;
                prop_assert!(!(fg && gf), "{} and {} both ahead", f, g);
            }
        }
    }

    #[test]
    fn provable_goals_need_no_revision(seed in any::<u64>()) {
        let (kb, goals) = kb_from_seed(seed);
        let e = Engine::new(&kb);
        let (a, t) = (term("a"), term("now"));
        if e.consistent_in(&kb.background(), &a, &t) != Some(true) {
            return Ok(());
        }
        for g in &goals {
            if e.prove_for_agent(&a, &t, g).unwrap().is_proved() {
                match e.delta(&a, &t, g).unwrap() {
                    DeltaOutcome::Witness(w) => prop_assert_eq!(w.distance, Rational::from_integer(0.into())),
                    other => prop_assert!(false, "{} has {:?}", g, other),
                }
            }
        }
    }

    #[test]
    fn saturation_reaches_a_fixpoint(seed in any::<u64>()) {
        let (kb, _) = kb_from_seed(seed);
        let e = Engine::new(&kb);
        let tb: ProbTable<Rational> = ProbTable::from_kb(&kb);
        let (a, t) = (term("a"), term("now"));
        let mut store = e.seed_store(&tb, &a, &t).unwrap();
        e.saturate(&mut store, &a, &t, 8);
        let before = store.clone();
        e.saturate(&mut store, &a, &t, 1);
        prop_assert_eq!(store, before);
    }

    #[test]
    fn float_and_exact_scalars_agree(seed in any::<u64>()) {
        let (kb, goals) = kb_from_seed(seed);
        let e = Engine::new(&kb);
        let exact: ProbTable<Rational> = ProbTable::from_kb(&kb);
        let float: ProbTable<f64> = ProbTable::from_kb(&kb);
        let (a, t) = (term("a"), term("now"));
        for f in &goals {
            for g in &goals {
                let x = e.more_reasonable(&exact, &a, &t, f, g).unwrap();
                let y = e.more_reasonable(&float, &a, &t, f, g).unwrap();
                let near_tie = match &y.evidence {
                    Evidence::Probabilities { left, right } => (left - right).abs() < 1e-12,
                    Evidence::ProofCosts { left, right, .. } => (left - right).abs() < 1e-12,
                    _ => false,
                };
                if !near_tie {
                    prop_assert_eq!(x.clause, y.clause);
                    prop_assert_eq!(x.holds, y.holds);
                }
            }
        }
    }
}

#[test]
fn subsumption_check_is_downward_closure() {
    for bits in 0u8..32 {
        let set = (1..=5).filter(|l| bits >> (l - 1) & 1 == 1).collect();
        let closed = (bits + 1) & bits == 0;
        assert_eq!(check_subsumption(&set), closed, "{set:?}");
    }
}

#[test]
fn certain_axioms_are_never_removed() {
    let kb = parse_kb(
        "(const a Agent) (const now Moment) (const p Boolean) (const q Boolean)
         (axiom keep :certain (not p)) (axiom drop (not q))",
    )
    .unwrap();
    let e = Engine::new(&kb);
    let (a, t) = (term("a"), term("now"));
    let q = e.delta(&a, &t, &kb.formula("q").unwrap()).unwrap();
    assert_eq!(q.witness().unwrap().labels().1, vec!["drop"]);
    let p = e.delta(&a, &t, &kb.formula("p").unwrap()).unwrap();
    assert!(p.witness().is_none());
    let v = e
        .more_reasonable(&ProbTable::<Rational>::from_kb(&kb), &a, &t, &kb.formula("q").unwrap(), &kb.formula("p").unwrap())
        .unwrap();
    assert_eq!(v.clause, Clause::III);
    assert!(v.holds);
}
