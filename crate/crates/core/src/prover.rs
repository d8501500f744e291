//! Refutation search over the clause form of a finite, ground theory.
//!
//! Quantifiers are expanded over the Herbrand universe, modal subformulas
//! are opaque atoms, and a DPLL search with unit propagation looks for a
//! countermodel of premises plus the negated goal. A closed search tree is
//! turned into a tree of binary resolution steps.

use std::collections::HashMap;

use crate::formula::{not, Formula};
use crate::ground::Universe;
use crate::moments::MomentOrder;
use crate::proof::{Lemma, Proof, ProofResult, Rule, Step, UnknownReason};
use crate::prop::{var_of, AtomTable, Clausifier, Lit};
use crate::sort::Signature;

/// Premises and the interpretation they are read under.
#[derive(Clone, Copy, Debug)]
pub struct Problem<'a> {
    pub signature: &'a Signature,
    pub order: &'a MomentOrder,
    pub premises: &'a [Formula],
    /// Facts justified by their own subproofs; used like premises.
    pub lemmas: &'a [Lemma],
}

/// Outcome of one refutation attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Refutation(Proof),
    Satisfiable,
    Budget,
    NotFinite,
}

impl Problem<'_> {
    /// Proves `goal`, or its negation, within `depth` nested case splits.
    pub fn prove(&self, goal: &Formula, depth: usize) -> ProofResult {
        let first = self.refute(goal, depth);
        if let Search::Refutation(proof) = first {
            return ProofResult::Proved { proof };
        }
        if first == Search::NotFinite {
            return ProofResult::Unknown {
                reason: UnknownReason::NotFinite,
            };
        }
        let negated = not(goal.clone());
        match self.refute(&negated, depth) {
            Search::Refutation(proof) => ProofResult::Refuted { proof },
            Search::Satisfiable if first == Search::Satisfiable => ProofResult::Unknown {
                reason: UnknownReason::NotEntailed,
            },
            Search::NotFinite => ProofResult::Unknown {
                reason: UnknownReason::NotFinite,
            },
            _ => ProofResult::Unknown {
                reason: UnknownReason::Budget,
            },
        }
    }

    /// `Some(true)` if no contradiction follows from the premises,
    /// `Some(false)` if one does, `None` if the search was cut off.
    pub fn consistent(&self, depth: usize) -> Option<bool> {
        match self.refute(&Formula::Bottom, depth) {
            Search::Refutation(_) => Some(false),
            Search::Satisfiable => Some(true),
            Search::Budget | Search::NotFinite => None,
        }
    }

    pub fn universe(&self, goal: &Formula) -> Result<Universe, crate::ground::NotFinite> {
        let facts = self.lemmas.iter().map(|l| &l.fact);
        Universe::new(
            self.signature,
            self.premises.iter().chain(facts).chain(std::iter::once(goal)),
        )
    }

    /// Searches for a refutation of premises plus `¬goal`.
    pub fn refute(&self, goal: &Formula, depth: usize) -> Search {
        let key = goal.canonical();
        if let Some(p) = self.premises.iter().find(|p| p.canonical() == key) {
            return Search::Refutation(Proof {
                goal: goal.clone(),
                premises_used: vec![p.clone()],
                steps: vec![Step {
                    rule: Rule::Premise,
                    inputs: vec![],
                    output: p.clone(),
                }],
                depth: 0,
                lemmas: vec![],
            });
        }
        if let Some(k) = self.lemmas.iter().position(|l| l.fact.canonical() == key) {
            return Search::Refutation(Proof {
                goal: goal.clone(),
                premises_used: vec![],
                steps: vec![Step {
                    rule: Rule::Lemma(0),
                    inputs: vec![],
                    output: self.lemmas[k].fact.clone(),
                }],
                depth: 0,
                lemmas: vec![self.lemmas[k].clone()],
            });
        }
        let universe = match self.universe(goal) {
            Ok(u) => u,
            Err(_) => return Search::NotFinite,
        };
        let mut sources: Vec<(Source, Formula)> = Vec::new();
        sources.extend(self.premises.iter().enumerate().map(|(i, p)| (Source::Premise(i), p.clone())));
        sources.extend(self.lemmas.iter().enumerate().map(|(k, l)| (Source::Lemma(k), l.fact.clone())));
        if *goal != Formula::Bottom {
            sources.push((Source::Hypothesis, not(goal.clone())));
        }
        let mut atoms = AtomTable::default();
        let mut clauses = Vec::new();
        let mut origin = Vec::new();
        let mut seen = HashMap::new();
        for (si, (_, f)) in sources.iter().enumerate() {
            let ground = universe.ground(f);
            let cs = match (Clausifier {
                atoms: &mut atoms,
                order: self.order,
            })
            .clauses(&ground)
            {
                Ok(cs) => cs,
                Err(_) => return Search::Budget,
            };
            for c in cs {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(c.clone()) {
                    e.insert(clauses.len());
                    clauses.push(c);
                    origin.push(si);
                }
            }
        }
        let ranks = atoms.ranks();
        let mut occurs = vec![Vec::new(); atoms.len()];
        for (ci, c) in clauses.iter().enumerate() {
            for l in c {
                occurs[var_of(*l)].push(ci);
            }
        }
        let mut s = Solver {
            clauses,
            origin,
            sources,
            atoms,
            ranks,
            occurs,
            value: vec![0; 0],
            trail: Vec::new(),
            budget: depth,
            steps: Vec::new(),
            source_step: HashMap::new(),
            clause_step: HashMap::new(),
        };
        s.value = vec![0; s.atoms.len()];
        match s.node(0) {
            Node::Sat => Search::Satisfiable,
            Node::Budget => Search::Budget,
            Node::Refuted(c, d) => {
                debug_assert!(c.lits.is_empty());
                Search::Refutation(s.finish(goal, c.step, d, self))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Source {
    Premise(usize),
    Lemma(usize),
    Hypothesis,
}

#[derive(Clone, Debug)]
struct Derived {
    lits: Vec<Lit>,
    step: usize,
}

enum Node {
    Sat,
    Budget,
    /// A clause false under the assignment at entry, and its depth.
    Refuted(Derived, usize),
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    origin: Vec<usize>,
    sources: Vec<(Source, Formula)>,
    atoms: AtomTable,
    ranks: Vec<usize>,
    occurs: Vec<Vec<usize>>,
    /// 1 true, -1 false, 0 open.
    value: Vec<i8>,
    /// Assigned literal and the clause that forced it, if any.
    trail: Vec<(Lit, Option<usize>)>,
    budget: usize,
    steps: Vec<Step>,
    source_step: HashMap<Source, usize>,
    clause_step: HashMap<Vec<Lit>, usize>,
}

const SAT_NODE_CAP: usize = 100_000;

fn sort_clause(c: &mut Vec<Lit>) {
    c.sort_by_key(|l| (var_of(*l), *l < 0));
    c.dedup();
}

impl Solver {
    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[var_of(l)];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Lit, reason: Option<usize>) {
        self.value[var_of(l)] = if l > 0 { 1 } else { -1 };
        self.trail.push((l, reason));
    }

    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let (l, _) = self.trail.pop().unwrap();
            self.value[var_of(l)] = 0;
        }
    }

    /// Unit propagation; returns a clause with every literal false.
    fn propagate(&mut self) -> Option<usize> {
        if let Some(ci) = self.clauses.iter().position(Vec::is_empty) {
            return Some(ci);
        }
        let mut queue: Vec<usize> = (0..self.clauses.len()).collect();
        let mut head = 0;
        // Clauses are rescanned whenever one of their variables is assigned.
        while head < queue.len() {
            let ci = queue[head];
            head += 1;
            let mut open = None;
            let mut n_open = 0;
            let mut sat = false;
            for &l in &self.clauses[ci] {
                match self.lit_value(l) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => {
                        n_open += 1;
                        open = Some(l);
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            match n_open {
                0 => return Some(ci),
                1 => {
                    let l = open.unwrap();
                    self.assign(l, Some(ci));
                    queue.extend(self.occurs[var_of(l)].iter().copied());
                }
                _ => {}
            }
        }
        None
    }

    fn branch_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in &self.clauses {
            if c.iter().any(|l| self.lit_value(*l) == 1) {
                continue;
            }
            for l in c {
                let v = var_of(*l);
                if self.value[v] == 0 && best.is_none_or(|b| self.ranks[v] < self.ranks[b]) {
                    best = Some(v);
                }
            }
        }
        best
    }

    fn node(&mut self, depth: usize) -> Node {
        let start = self.trail.len();
        if let Some(ci) = self.propagate() {
            let conflict = self.base(ci);
            let out = self.resolve_back(conflict, start);
            self.undo(start);
            return Node::Refuted(out, 0);
        }
        let Some(x) = self.branch_var() else {
            self.undo(start);
            return Node::Sat;
        };
        if depth >= self.budget {
            // Past the budget no proof is recorded, but a model still
            // settles the question.
            let sat = self.satisfiable();
            self.undo(start);
            return if sat { Node::Sat } else { Node::Budget };
        }
        let x = x as Lit + 1;
        let mut closed: Vec<(Derived, usize)> = Vec::new();
        let mut cut = false;
        for lit in [x, -x] {
            let mark = self.trail.len();
            self.assign(lit, None);
            let out = self.node(depth + 1);
            self.undo(mark);
            match out {
                Node::Sat => {
                    self.undo(start);
                    return Node::Sat;
                }
                Node::Budget => cut = true,
                Node::Refuted(c, d) => {
                    if !c.lits.contains(&-lit) {
                        let out = self.resolve_back(c, start);
                        self.undo(start);
                        return Node::Refuted(out, d);
                    }
                    closed.push((c, d));
                }
            }
        }
        if cut {
            self.undo(start);
            return Node::Budget;
        }
        let (neg, dn) = closed.pop().unwrap();
        let (pos, dp) = closed.pop().unwrap();
        let r = self.resolve(&neg, &pos, x);
        let out = self.resolve_back(r, start);
        self.undo(start);
        Node::Refuted(out, 1 + dp.max(dn))
    }

    /// Plain DPLL without proof recording, capped in nodes; `false` when
    /// refuted or capped.
    fn satisfiable(&mut self) -> bool {
        let mut nodes = 0;
        self.sat_node(&mut nodes)
    }

    fn sat_node(&mut self, nodes: &mut usize) -> bool {
        *nodes += 1;
        if *nodes > SAT_NODE_CAP {
            return false;
        }
        let start = self.trail.len();
        if self.propagate().is_some() {
            self.undo(start);
            return false;
        }
        let Some(x) = self.branch_var() else {
            self.undo(start);
            return true;
        };
        let x = x as Lit + 1;
        for lit in [x, -x] {
            let mark = self.trail.len();
            self.assign(lit, None);
            let sat = self.sat_node(nodes);
            self.undo(mark);
            if sat {
                self.undo(start);
                return true;
            }
        }
        self.undo(start);
        false
    }

    /// Resolves away literals propagated since `start`, latest first.
    fn resolve_back(&mut self, mut c: Derived, start: usize) -> Derived {
        for i in (start..self.trail.len()).rev() {
            let (p, reason) = self.trail[i];
            let Some(ri) = reason else { continue };
            if c.lits.contains(&-p) {
                let r = self.base(ri);
                c = self.resolve(&r, &c, p);
            }
        }
        c
    }

    /// Resolvent of `a` (containing `pivot`) and `b` (containing `-pivot`).
    fn resolve(&mut self, a: &Derived, b: &Derived, pivot: Lit) -> Derived {
        let mut lits: Vec<Lit> = a.lits.iter().filter(|l| **l != pivot).copied().collect();
        lits.extend(b.lits.iter().filter(|l| **l != -pivot));
        sort_clause(&mut lits);
        if let Some(&step) = self.clause_step.get(&lits) {
            return Derived { lits, step };
        }
        let step = self.push(Step {
            rule: Rule::Resolve,
            inputs: vec![a.step, b.step],
            output: self.atoms.clause_formula(&lits),
        });
        self.clause_step.insert(lits.clone(), step);
        Derived { lits, step }
    }

    fn base(&mut self, ci: usize) -> Derived {
        let lits = self.clauses[ci].clone();
        if let Some(&step) = self.clause_step.get(&lits) {
            return Derived { lits, step };
        }
        let (src, formula) = self.sources[self.origin[ci]].clone();
        let src_step = match self.source_step.get(&src) {
            Some(&s) => s,
            None => {
                let (rule, output) = match src {
                    Source::Premise(_) => (Rule::Premise, formula),
                    Source::Lemma(k) => (Rule::Lemma(k), formula),
                    Source::Hypothesis => (Rule::Hypothesis, formula),
                };
                let s = self.push(Step {
                    rule,
                    inputs: vec![],
                    output,
                });
                self.source_step.insert(src, s);
                s
            }
        };
        let step = self.push(Step {
            rule: Rule::Clausify,
            inputs: vec![src_step],
            output: self.atoms.clause_formula(&lits),
        });
        self.clause_step.insert(lits.clone(), step);
        Derived { lits, step }
    }

    fn push(&mut self, s: Step) -> usize {
        self.steps.push(s);
        self.steps.len() - 1
    }

    /// Appends the conclusion, drops unreachable steps and renumbers.
    fn finish(mut self, goal: &Formula, empty: usize, depth: usize, problem: &Problem) -> Proof {
        let last = self.push(Step {
            rule: Rule::Conclude,
            inputs: vec![empty],
            output: goal.clone(),
        });
        let mut keep = vec![false; self.steps.len()];
        keep[last] = true;
        for i in (0..=last).rev() {
            if keep[i] {
                for &j in &self.steps[i].inputs {
                    keep[j] = true;
                }
            }
        }
        let mut renum = vec![usize::MAX; self.steps.len()];
        let mut lemma_renum: HashMap<usize, usize> = HashMap::new();
        let mut lemmas = Vec::new();
        let mut steps = Vec::new();
        let mut premises_used = Vec::new();
        for (i, mut s) in self.steps.into_iter().enumerate() {
            if !keep[i] {
                continue;
            }
            s.inputs = s.inputs.iter().map(|j| renum[*j]).collect();
            match s.rule {
                Rule::Premise => premises_used.push(s.output.clone()),
                Rule::Lemma(k) => {
                    let nk = *lemma_renum.entry(k).or_insert_with(|| {
                        lemmas.push(problem.lemmas[k].clone());
                        lemmas.len() - 1
                    });
                    s.rule = Rule::Lemma(nk);
                }
                _ => {}
            }
            renum[i] = steps.len();
            steps.push(s);
        }
        Proof {
            goal: goal.clone(),
            premises_used,
            steps,
            depth,
            lemmas,
        }
    }
}
