//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mucal::agent::Engine;
use mucal::check::CheckError;
use mucal::formula::{atom, believes};
use mucal::kb::KbDocument;
use mucal::proof::{Proof, ProofResult, Rule, Step};
use mucal::reason::{Clause, DeltaOutcome, Distance, ProbTable, Verdict};
use mucal::strength::{check_subsumption, Origin, RsbOutcome, StoredBelief, StrengthLevel};
use mucal::{parse_formula_in, parse_kb, print_formula, Formula, Modal, Rational, Term, Var};
use rand::seq::SliceRandom;
use rand::Rng;
use support::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("{what} took {spent:?}, limit {limit:?}"))
}

fn table(kb: &KbDocument) -> ProbTable<Rational> {
    ProbTable::from_kb(kb)
}

fn lottery() -> Outcome {
    let start = Instant::now();
    let kb = scenario("lottery.kb");
    let e = Engine::new(&kb);
    let t = table(&kb);
    let (a, now) = (term("s"), term("now"));
    let some = kb.formula("(exists (t) (win t))").unwrap();
    let none = kb.formula("(not (exists (t) (win t)))").unwrap();
    let (js, store) = e.judge(&t, &a, &now, &some).map_err(|x| x.to_string())?;
    let (jn, _) = e.judge(&t, &a, &now, &none).map_err(|x| x.to_string())?;
    ensure(js.level == StrengthLevel::Certain, || format!("some winner at {:?}", js.level))?;
    ensure(jn.level == StrengthLevel::Presumption, || format!("no winner at {:?}", jn.level))?;
    ensure(store.iter().all(|b| b.formula.canonical() != Formula::Bottom), || "falsum stored".into())?;
    ensure(store.is_consistent(), || "store holds a formula and its negation at one level".into())?;
    let u = kb.params.u;
    for b in store.iter() {
        if let Origin::Derived { levels, .. } = &b.origin {
            let (lo, hi) = (levels.iter().min(), levels.iter().max());
            if let (Some(lo), Some(hi)) = (lo, hi) {
                ensure(hi - lo <= u, || format!("{} combines levels {lo} and {hi}", b.formula))?;
            }
        }
    }
    within(start, Duration::from_secs(5), "desk-scale lottery")?;

    let full = scenario("lottery_full.kb");
    let e = Engine::new(&full);
    let tf = table(&full);
    let lose = full.formula("(not (win t1))").unwrap();
    let win = full.formula("(win t1)").unwrap();
    let v = e.more_reasonable(&tf, &a, &now, &lose, &win).map_err(|x| x.to_string())?;
    let expected = Rational::from_integer(1.into()) - ratio(1, 1_000_000_000_000);
    ensure(v.clause == Clause::I && v.holds, || format!("full scale decided by {}", v.clause))?;
    match &v.evidence {
        mucal::reason::Evidence::Probabilities { left, .. } => {
            ensure(*left == expected, || format!("Pr(lose) = {left}"))?
        }
        _ => return Err("full scale evidence is not probabilistic".into()),
    }
    let stress = scenario("lottery_stress.kb");
    let e = Engine::new(&stress);
    let v = e
        .more_reasonable(&table(&stress), &a, &now, &lose, &win)
        .map_err(|x| x.to_string())?;
    ensure(v.clause == Clause::I && v.holds, || "stress lottery not decided by probabilities".into())?;
    Ok(format!("levels 5 and 2, {} stored beliefs consistent", store.len()))
}

fn murder() -> Outcome {
    let start = Instant::now();
    let kb = scenario("murder.kb");
    let e = Engine::new(&kb);
    let t = table(&kb);
    let (s, now) = (term("s"), term("now"));
    let m = kb.formula("(murderer alice)").unwrap();
    let pool = e.considered(&s, &now);
    let j = e.classify(&t, &s, &now, &m, &pool).map_err(|x| x.to_string())?;
    ensure(j.level == StrengthLevel::Presumption, || format!("level {:?}", j.level))?;
    let v2 = j.verdict(2).ok_or("no B2 comparison")?;
    ensure(v2.clause == Clause::III, || format!("B2 decided by {}", v2.clause))?;
    let dm = e.delta(&s, &now, &m).map_err(|x| x.to_string())?;
    let dn = e.delta(&s, &now, &m.complement()).map_err(|x| x.to_string())?;
    let w = dm.witness().ok_or("no witness for the positive goal")?;
    let (theta, lambda) = w.labels();
    ensure(theta == ["theta1"] && lambda.is_empty(), || format!("witness {theta:?} {lambda:?}"))?;
    let (x, y) = (dm.distance().unwrap(), dn.distance().ok_or("negative goal has no distance")?);
    ensure(x.less(&y), || format!("δ {x} vs {y}"))?;
    ensure(x == Distance::Finite(ratio(6, 1)) && y == Distance::Finite(ratio(9, 1)), || {
        format!("δ {x} vs {y}")
    })?;

    let kc = scenario("murder_certain.kb");
    let e = Engine::new(&kc);
    let pool = e.considered(&s, &now);
    let j = e.classify(&table(&kc), &s, &now, &m, &pool).map_err(|x| x.to_string())?;
    ensure(j.level >= StrengthLevel::BeyondReasonableDoubt, || format!("certain variant at {:?}", j.level))?;
    let d = e.delta(&s, &now, &m).map_err(|x| x.to_string())?;
    ensure(d.distance() == Some(Distance::Finite(ratio(0, 1))), || format!("certain variant δ {d:?}"))?;
    within(start, Duration::from_secs(10), "murder")?;
    Ok(format!("level 2 via Clause III, δ {x} < {y}; certain variant level {}", j.level.value()))
}

/// Random knowledge bases for the property criteria.
fn random_kbs(count: usize, seed: u64, shape: impl Fn(&mut TestRng) -> KbShape) -> Vec<(KbDocument, Vec<Formula>)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let sh = shape(&mut r);
            let (text, goals) = random_kb(&mut r, &sh);
            let kb = parse_kb(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
            let goals = goals.iter().map(|g| kb.formula(g).unwrap()).collect();
            (kb, goals)
        })
        .collect()
}

fn small_shape(r: &mut TestRng) -> KbShape {
    KbShape {
        atoms: r.gen_range(2..=6),
        axioms: r.gen_range(1..=4),
        candidates: r.gen_range(0..=4),
        probabilities: r.gen_bool(0.5),
        beliefs: r.gen_bool(0.5),
    }
}

/// The primary agent and latest moment of a scenario.
fn judge_point(kb: &KbDocument) -> (Term, Term) {
    let agents = kb.agents();
    let a = if agents.contains(&term("s")) {
        term("s")
    } else {
        agents.into_iter().next().unwrap()
    };
    let all: Vec<&Term> = kb.order.moments().collect();
    let t = all
        .iter()
        .find(|m| !all.iter().any(|n| kb.order.holds(m, n)))
        .copied()
        .cloned()
        .unwrap();
    (a, t)
}

/// Scenarios with an agent and a moment to judge at.
fn agent_corpus() -> Vec<KbDocument> {
    corpus()
        .into_iter()
        .map(|(_, kb)| kb)
        .filter(|kb| !kb.agents().is_empty() && kb.order.moments().next().is_some())
        .collect()
}

fn subsumption() -> Outcome {
    let mut judged = 0;
    let mut violations = Vec::new();
    let mut cases: Vec<(KbDocument, Vec<Formula>)> = agent_corpus()
        .into_iter()
        .map(|kb| {
            let (a, t) = judge_point(&kb);
            let fs = Engine::new(&kb).considered(&a, &t);
            (kb, fs)
        })
        .collect();
    // The theorem presupposes a consistent agent: views that prove both a
    // formula and its negation are skipped and counted.
    let mut inconsistent = 0;
    let corpus_count = cases.len();
    for (kb, goals) in random_kbs(400, 3, small_shape) {
        if cases.len() - corpus_count == 200 {
            break;
        }
        let e = Engine::new(&kb);
        if e.consistent_in(&kb.background(), &term("a"), &term("now")) != Some(true) {
            inconsistent += 1;
            continue;
        }
        let mut fs = e.considered(&term("a"), &term("now"));
        fs.extend(goals.into_iter().take(2));
        cases.push((kb, fs));
    }
    let random_count = cases.len() - corpus_count;
    for (kb, fs) in &cases {
        let (a, t) = judge_point(kb);
        let e = Engine::new(kb);
        let tb = table(kb);
        let pool = e.considered(&a, &t);
        for f in fs {
            let j = e.classify(&tb, &a, &t, f, &pool).map_err(|x| x.to_string())?;
            judged += 1;
            if !check_subsumption(&j.satisfied) {
                violations.push(format!("{f}: {:?}", j.satisfied));
            }
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations of {judged}, first: {}", violations.len(), violations[0])
    })?;
    Ok(format!(
        "{judged} judgments over {random_count} consistent random KBs ({inconsistent} inconsistent skipped) and the corpus, no violations"
    ))
}

fn axioms_of_reasonableness() -> Outcome {
    let (mut pairs, mut triples, mut cneg) = (0, 0, 0);
    let mut cases: Vec<(KbDocument, Vec<Formula>)> = random_kbs(60, 4, small_shape)
        .into_iter()
        .map(|(kb, mut goals)| {
            goals.extend(kb.candidates.iter().map(|c| c.formula.clone()));
            goals.truncate(5);
            (kb, goals)
        })
        .collect();
    for kb in agent_corpus() {
        let (a, t) = judge_point(&kb);
        let mut fs: Vec<Formula> = kb.candidates.iter().map(|c| c.formula.clone()).collect();
        fs.extend(Engine::new(&kb).considered(&a, &t).into_iter().take(3));
        cases.push((kb, fs));
    }
    for (kb, fs) in &cases {
        let (a, t) = judge_point(kb);
        let e = Engine::new(kb);
        let tb = table(kb);
        let mut items: Vec<Formula> = fs.clone();
        items.extend(fs.iter().take(2).map(|f| believes(a.clone(), t.clone(), f.clone())));
        let n = items.len();
        let mut v: Vec<Vec<Option<Verdict<Rational>>>> = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                v[i][j] = Some(e.more_reasonable(&tb, &a, &t, &items[i], &items[j]).map_err(|x| x.to_string())?);
            }
        }
        let get = |i: usize, j: usize| v[i][j].as_ref().unwrap();
        for i in 0..n {
            ensure(!get(i, i).holds, || format!("{} more reasonable than itself", items[i]))?;
            for j in 0..n {
                if get(i, j).decided_by().is_some() {
                    pairs += 1;
                }
                ensure(!(get(i, j).holds && get(j, i).holds), || {
                    format!("{} and {} each more reasonable than the other", items[i], items[j])
                })?;
                for k in 0..n {
                    let (xy, yz, xz) = (get(i, j), get(j, k), get(i, k));
                    if xy.holds && yz.holds && xy.clause == yz.clause && xz.clause == xy.clause {
                        triples += 1;
                        ensure(xz.holds, || {
                            format!("transitivity fails for {} > {} > {}", items[i], items[j], items[k])
                        })?;
                    }
                }
            }
        }
        if e.consistent_in(&kb.background(), &a, &t) == Some(true) {
            for f in &items {
                let defined = matches!(e.delta(&a, &t, f), Ok(DeltaOutcome::Witness(_)));
                if !defined {
                    continue;
                }
                cneg += 1;
                let over = e.more_reasonable(&tb, &a, &t, f, &Formula::Bottom).map_err(|x| x.to_string())?;
                let under = e.more_reasonable(&tb, &a, &t, &Formula::Bottom, f).map_err(|x| x.to_string())?;
                ensure(over.holds && !under.holds, || format!("falsum comparison fails for {f}"))?;
            }
        }
    }
    Ok(format!("{pairs} decided pairs, {triples} same-clause triples, {cneg} falsum comparisons"))
}

fn delta_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let kbs = random_kbs(40, 5, |r| KbShape {
        atoms: r.gen_range(2..=5),
        axioms: r.gen_range(1..=5),
        candidates: r.gen_range(0..=3),
        probabilities: false,
        beliefs: false,
    });
    let mut goals = 0;
    for (kb, gs) in &kbs {
        let e = Engine::new(kb);
        for g in gs {
            goals += 1;
            let got = e.delta(&term("a"), &term("now"), g).map_err(|x| x.to_string())?;
            let want = delta_oracle(kb, g);
            let got_d = got.witness().map(|w| w.distance.clone());
            ensure(got_d == want, || format!("goal {g}: engine {got_d:?}, oracle {want:?}"))?;
            if let Some(w) = got.witness() {
                let mut set: Vec<Formula> = kb
                    .axioms
                    .iter()
                    .filter(|a| !w.lambda.iter().any(|l| l.label == a.label))
                    .map(|a| a.formula.clone())
                    .collect();
                set.extend(w.theta.iter().map(|t| t.formula.clone()));
                ensure(satisfiable(&set) && entails(&set, g), || format!("witness for {g} is not feasible"))?;
            }
        }
    }
    ensure(goals >= 50, || format!("only {goals} goals"))?;
    within(start, Duration::from_secs(60), "revision distance oracle")?;
    Ok(format!("{goals} goals over {} KBs agree with brute force", kbs.len()))
}

fn forged() -> Formula {
    atom("forged_atom", vec![])
}

/// Corruptions that no valid proof survives.
fn corrupt(p: &Proof, r: &mut TestRng) -> Option<Proof> {
    let mut q = p.clone();
    let kinds: Vec<usize> = (0..5)
        .filter(|k| match k {
            0 => p.steps.iter().any(|s| s.rule == Rule::Premise),
            1 => p.steps.iter().any(|s| s.rule == Rule::Resolve),
            2 => p.steps.iter().any(|s| !s.inputs.is_empty()),
            3 => p.steps.last().is_some_and(|s| s.rule == Rule::Conclude),
            _ => p.steps.iter().any(|s| s.rule == Rule::Clausify),
        })
        .collect();
    let kind = *kinds.choose(r)?;
    let pick = |rule: &dyn Fn(&Step) -> bool| -> Vec<usize> {
        p.steps.iter().enumerate().filter(|(_, s)| rule(s)).map(|(i, _)| i).collect()
    };
    match kind {
        0 => {
            let i = *pick(&|s| s.rule == Rule::Premise).choose(r)?;
            q.steps[i].output = forged();
        }
        1 => {
            let i = *pick(&|s| s.rule == Rule::Resolve).choose(r)?;
            let out = q.steps[i].output.clone();
            q.steps[i].output = match out {
                Formula::Bottom => forged(),
                Formula::Or(mut xs) => {
                    xs.push(forged());
                    Formula::Or(xs)
                }
                l => Formula::Or(vec![l, forged()]),
            };
        }
        2 => {
            let i = *pick(&|s| !s.inputs.is_empty()).choose(r)?;
            q.steps[i].inputs[0] = i + r.gen_range(0..3);
        }
        3 => {
            let last = q.steps.len() - 1;
            q.steps[last].output = forged();
        }
        _ => {
            let i = *pick(&|s| s.rule == Rule::Clausify).choose(r)?;
            q.steps[i].output = forged();
        }
    }
    Some(q)
}

fn checker_soundness() -> Outcome {
    let mut r = rng(6);
    let (mut replayed, mut rejected) = (0, 0);
    let mut cases: Vec<(KbDocument, Vec<Formula>)> = random_kbs(60, 7, small_shape);
    for kb in agent_corpus() {
        let (a, t) = judge_point(&kb);
        let e = Engine::new(&kb);
        let mut fs = e.considered(&a, &t);
        fs.extend(kb.candidates.iter().map(|c| c.formula.clone()));
        cases.push((kb, fs));
    }
    for (kb, goals) in &cases {
        let (a, t) = judge_point(kb);
        let e = Engine::new(kb);
        let gamma = kb.background();
        let mut goals = goals.clone();
        goals.extend(goals.clone().into_iter().map(|g| believes(a.clone(), t.clone(), g)));
        for g in &goals {
            let result = e.prove_for_agent(&a, &t, g).map_err(|x| x.to_string())?;
            let proof = match &result {
                ProofResult::Proved { proof } => proof,
                _ => continue,
            };
            e.check(proof, &gamma, &a, &t, g)
                .map_err(|x| format!("valid proof of {g} rejected: {x}"))?;
            replayed += 1;
            for _ in 0..4 {
                let Some(bad) = corrupt(proof, &mut r) else { continue };
                let verdict: Result<(), CheckError> = e.check(&bad, &gamma, &a, &t, g);
                ensure(verdict.is_err(), || format!("corrupted proof of {g} accepted"))?;
                rejected += 1;
            }
        }
    }
    ensure(replayed > 0, || "no proofs to replay".into())?;
    Ok(format!("{replayed} proofs replayed, {rejected} corruptions rejected"))
}

fn counterfactual_ordering() -> Outcome {
    let (s, now) = (term("s"), term("now"));
    let mut verdicts = Vec::new();
    for name in ["counterfactual.kb", "counterfactual_flipped.kb"] {
        let kb = scenario(name);
        let e = Engine::new(&kb);
        let f = kb.formula("(holds f tp)").unwrap();
        let g = kb.formula("(holds g tp)").unwrap();
        let v = e.more_reasonable(&table(&kb), &s, &now, &f, &g).map_err(|x| x.to_string())?;
        ensure(v.clause == Clause::III, || format!("{name}: decided by {}", v.clause))?;
        let df = e.delta(&s, &now, &f).unwrap().distance().ok_or("f has no distance")?;
        let dg = e.delta(&s, &now, &g).unwrap().distance().ok_or("g has no distance")?;
        ensure(v.holds == df.less(&dg), || format!("{name}: verdict disagrees with δ {df} vs {dg}"))?;
        verdicts.push(v.holds);
    }
    ensure(verdicts[0] != verdicts[1], || "flipping the cheaper revision did not flip the verdict".into())?;
    Ok("Clause III verdict follows δ and flips with the cheaper revision".into())
}

fn guard_arithmetic() -> Outcome {
    let kb = parse_kb("(const a Agent) (const now Moment) (const p Boolean) (const q Boolean)").unwrap();
    let e = Engine::new(&kb);
    let (a, now) = (term("a"), term("now"));
    let belief = |f: &str, level| StoredBelief {
        agent: a.clone(),
        moment: now.clone(),
        formula: kb.formula(f).unwrap(),
        level,
        origin: Origin::Classified,
    };
    let q = kb.formula("q").unwrap();
    let mut checked = 0;
    for s1 in 1..=5u8 {
        for s2 in 1..=5u8 {
            for u in 0..=4u8 {
                let out = e
                    .infer_rsb(&[belief("p", s1), belief("(implies p q)", s2)], &q, &now, u)
                    .map_err(|x| x.to_string())?;
                let fires = s1.abs_diff(s2) <= u;
                match out {
                    RsbOutcome::Fired(b) => {
                        ensure(fires && b.level == s1.min(s2), || format!("({s1},{s2},u={u}) gave {}", b.level))?
                    }
                    RsbOutcome::Blocked { spread, .. } => {
                        ensure(!fires && spread == s1.abs_diff(s2), || format!("({s1},{s2},u={u}) blocked"))?
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} level pairs and spreads"))
}

/// A random well-sorted formula over a small fixed signature, with binders
/// already named as the printer names them.
fn gen_formula(r: &mut TestRng, depth: usize, bound: &mut Vec<Var>) -> Formula {
    let obj = |r: &mut TestRng, bound: &Vec<Var>| -> Term {
        let objs: Vec<&Var> = bound.iter().filter(|v| v.sort.as_str() == "Object").collect();
        if !objs.is_empty() && r.gen_bool(0.6) {
            Term::Var((*objs.choose(r).unwrap()).clone())
        } else {
            Term::constant(*["c1", "c2"].choose(r).unwrap())
        }
    };
    if depth == 0 || r.gen_bool(0.25) {
        return match r.gen_range(0..5) {
            0 => atom("p", vec![]),
            1 => atom("q", vec![obj(r, bound)]),
            2 => atom("rel", vec![obj(r, bound), obj(r, bound)]),
            3 => Formula::Top,
            _ => atom("prior", vec![Term::constant("t0"), Term::Int(r.gen_range(0..4))]),
        };
    }
    let sub = |r: &mut TestRng, bound: &mut Vec<Var>| gen_formula(r, depth - 1, bound);
    match r.gen_range(0..10) {
        0 => Formula::Not(Box::new(sub(r, bound))),
        1 => Formula::And(vec![sub(r, bound), sub(r, bound)]),
        2 => Formula::Or(vec![sub(r, bound), sub(r, bound), sub(r, bound)]),
        3 => Formula::Implies(Box::new(sub(r, bound)), Box::new(sub(r, bound))),
        4 => Formula::Iff(Box::new(sub(r, bound)), Box::new(sub(r, bound))),
        5 => Formula::Xor(vec![sub(r, bound), sub(r, bound)]),
        6 | 7 => {
            let v = Var::new(format!("_{}", bound.len()), mucal::Sort::object());
            bound.push(v.clone());
            let body = Box::new(sub(r, bound));
            bound.pop();
            if r.gen_bool(0.5) {
                Formula::Forall(v, body)
            } else {
                Formula::Exists(v, body)
            }
        }
        _ => {
            let m = *[Modal::Believes, Modal::Perceives, Modal::Withholds].choose(r).unwrap();
            let who = Term::constant(*["ann", "ben"].choose(r).unwrap());
            let when = if r.gen_bool(0.5) {
                Term::constant("t0")
            } else {
                Term::Int(r.gen_range(0..4))
            };
            Formula::Modal(m, who, when, Box::new(sub(r, bound)))
        }
    }
}

fn round_trip() -> Outcome {
    let mut count = 0;
    for (name, kb) in corpus() {
        let fs = kb
            .axioms
            .iter()
            .map(|a| &a.formula)
            .chain(kb.candidates.iter().map(|c| &c.formula))
            .chain(kb.probabilities.iter().map(|p| &p.formula));
        for f in fs {
            let back = parse_formula_in(&print_formula(f), &kb.signature).map_err(|e| format!("{name}: {e}"))?;
            ensure(back == f.alpha_normalize(), || format!("{name}: {f} came back as {back}"))?;
            count += 1;
        }
    }
    let sig = parse_kb(
        "(const ann Agent) (const ben Agent) (const t0 Moment) (const c1 Object) (const c2 Object)\n\
         (const p Boolean) (func q (Object) Boolean) (func rel (Object Object) Boolean)",
    )
    .unwrap()
    .signature;
    let mut r = rng(9);
    let mut shapes = BTreeSet::new();
    for _ in 0..1000 {
        let f = gen_formula(&mut r, 4, &mut Vec::new());
        let text = print_formula(&f);
        let back = parse_formula_in(&text, &sig).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == f, || format!("{text} came back as {back}"))?;
        shapes.insert(text);
        count += 1;
    }
    Ok(format!("{count} formulas ({} distinct generated)", shapes.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lottery resolution", lottery),
        ("murder presumption", murder),
        ("higher strength subsumes lower", subsumption),
        ("axioms of reasonableness", axioms_of_reasonableness),
        ("revision distance oracle", delta_oracle_equivalence),
        ("proof checker soundness", checker_soundness),
        ("counterfactual ordering", counterfactual_ordering),
        ("belief rule guard arithmetic", guard_arithmetic),
        ("parser round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
