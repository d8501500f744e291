//! Shared fixtures: scenario loading, random knowledge bases, and oracles
//! that do not go through the prover.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use mucal::kb::KbDocument;
use mucal::{parse_kb, Formula, Rational, Term};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

pub fn scenario(name: &str) -> KbDocument {
    let path = scenario_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_kb(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every shipped scenario except the thousand-ticket one.
pub fn corpus() -> Vec<(String, KbDocument)> {
    let mut names: Vec<String> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".kb") && n != "lottery_stress.kb")
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), scenario(&n))).collect()
}

pub fn term(s: &str) -> Term {
    Term::constant(s)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A random propositional formula over `atoms`, in concrete syntax.
pub fn prop_formula(rng: &mut TestRng, atoms: &[String], depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.35) {
        let a = atoms.choose(rng).unwrap().clone();
        return if rng.gen_bool(0.3) { format!("(not {a})") } else { a };
    }
    let sub = |rng: &mut TestRng| prop_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..6) {
        0 => format!("(not {})", sub(rng)),
        1 => format!("(and {} {})", sub(rng), sub(rng)),
        2 => format!("(or {} {})", sub(rng), sub(rng)),
        3 => format!("(implies {} {})", sub(rng), sub(rng)),
        4 => format!("(iff {} {})", sub(rng), sub(rng)),
        _ => format!("(xor {} {})", sub(rng), sub(rng)),
    }
}

pub struct KbShape {
    pub atoms: usize,
    pub axioms: usize,
    pub candidates: usize,
    pub probabilities: bool,
    pub beliefs: bool,
}

/// Knowledge base text for agent `a` at moment `now` over atoms `p0…`.
/// Axioms and candidates have pairwise distinct forms; the returned goals
/// may coincide with them.
pub fn random_kb(rng: &mut TestRng, shape: &KbShape) -> (String, Vec<String>) {
    let atoms: Vec<String> = (0..shape.atoms).map(|i| format!("p{i}")).collect();
    let mut text = String::from("(const a Agent)\n(const now Moment)\n");
    for p in &atoms {
        text.push_str(&format!("(const {p} Boolean)\n"));
    }
    let mut used = BTreeSet::new();
    let fresh = |rng: &mut TestRng, used: &mut BTreeSet<String>| loop {
        let f = prop_formula(rng, &atoms, 2);
        if used.insert(f.clone()) {
            return f;
        }
    };
    for i in 0..shape.axioms {
        let mut f = fresh(rng, &mut used);
        if shape.beliefs && rng.gen_bool(0.25) {
            f = format!("(believes a now {f})");
        }
        let certain = if rng.gen_bool(0.25) { " :certain" } else { "" };
        text.push_str(&format!("(axiom ax{i}{certain} {f})\n"));
    }
    for i in 0..shape.candidates {
        let f = fresh(rng, &mut used);
        let w = if rng.gen_bool(0.5) {
            format!(" {}", rng.gen_range(1..8))
        } else {
            String::new()
        };
        text.push_str(&format!("(candidate c{i} {f}{w})\n"));
    }
    if shape.probabilities {
        for p in &atoms {
            if !rng.gen_bool(0.4) {
                continue;
            }
            let d = rng.gen_range(2..7);
            let n = rng.gen_range(0..=d);
            text.push_str(&format!("(pr a now {p} {n}/{d})\n"));
        }
    }
    let mut goals: Vec<String> = Vec::new();
    for p in atoms.iter().take(2) {
        goals.push(p.clone());
        goals.push(format!("(not {p})"));
    }
    goals.push(fresh(rng, &mut used));
    (text, goals)
}

/// Truth value of a modal-free, quantifier-free formula.
pub fn eval(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(p, args) => {
            assert!(args.is_empty(), "propositional atoms only");
            v[p]
        }
        Formula::Not(a) => !eval(a, v),
        Formula::And(xs) => xs.iter().all(|x| eval(x, v)),
        Formula::Or(xs) => xs.iter().any(|x| eval(x, v)),
        Formula::Xor(xs) => xs.iter().filter(|x| eval(x, v)).count() == 1,
        Formula::Implies(a, b) => !eval(a, v) || eval(b, v),
        Formula::Iff(a, b) => eval(a, v) == eval(b, v),
        other => panic!("not propositional: {other}"),
    }
}

fn atom_names(f: &Formula, out: &mut BTreeSet<String>) {
    f.walk(&mut |g| {
        if let Formula::Atom(p, _) = g {
            out.insert(p.clone());
        }
    });
}

/// All assignments to the atoms of `fs`.
fn models<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> (Vec<String>, usize) {
    let mut names = BTreeSet::new();
    for f in fs {
        atom_names(f, &mut names);
    }
    let n = names.len();
    (names.into_iter().collect(), 1usize << n)
}

fn assignment(names: &[String], bits: usize) -> BTreeMap<String, bool> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), bits >> i & 1 == 1))
        .collect()
}

pub fn satisfiable(fs: &[Formula]) -> bool {
    let (names, count) = models(fs);
    (0..count).any(|bits| {
        let v = assignment(&names, bits);
        fs.iter().all(|f| eval(f, &v))
    })
}

pub fn entails(fs: &[Formula], goal: &Formula) -> bool {
    let (names, count) = models(fs.iter().chain(std::iter::once(goal)));
    (0..count).all(|bits| {
        let v = assignment(&names, bits);
        !fs.iter().all(|f| eval(f, &v)) || eval(goal, &v)
    })
}

/// Brute-force revision distance over every bounded pair of additions and
/// removals; `None` when no pair gives a consistent set entailing `goal`.
pub fn delta_oracle(kb: &KbDocument, goal: &Formula) -> Option<Rational> {
    let weight = |f: &Formula| -> Rational {
        kb.candidates
            .iter()
            .find(|c| &c.formula == f)
            .and_then(|c| c.weight.clone())
            .unwrap_or_else(|| {
                let mut s = BTreeSet::new();
                atom_names(f, &mut s);
                Rational::from_integer(BigInt::from(s.len()))
            })
    };
    let gamma: Vec<Formula> = kb.axioms.iter().map(|a| a.formula.clone()).collect();
    let mut adds: Vec<Formula> = kb
        .candidates
        .iter()
        .map(|c| c.formula.clone())
        .filter(|f| !gamma.contains(f))
        .collect();
    if kb.params.trivial_addition && !gamma.contains(goal) && !adds.contains(goal) {
        adds.push(goal.clone());
    }
    let removes: Vec<Formula> = kb
        .axioms
        .iter()
        .filter(|a| !a.certain)
        .map(|a| a.formula.clone())
        .collect();
    let mut best: Option<Rational> = None;
    for th in 0usize..1 << adds.len() {
        if th.count_ones() as usize > kb.params.add_max {
            continue;
        }
        for la in 0usize..1 << removes.len() {
            if la.count_ones() as usize > kb.params.remove_max {
                continue;
            }
            let mut set: Vec<Formula> = gamma
                .iter()
                .filter(|f| !(0..removes.len()).any(|i| la >> i & 1 == 1 && removes[i] == **f))
                .cloned()
                .collect();
            let mut dist = Rational::from_integer(0.into());
            for (i, f) in adds.iter().enumerate() {
                if th >> i & 1 == 1 {
                    set.push(f.clone());
                    dist += weight(f);
                }
            }
            for (i, f) in removes.iter().enumerate() {
                if la >> i & 1 == 1 {
                    dist += weight(f);
                }
            }
            if best.as_ref().is_some_and(|b| *b <= dist) {
                continue;
            }
            if satisfiable(&set) && entails(&set, goal) {
                best = Some(dist);
            }
        }
    }
    best
}
