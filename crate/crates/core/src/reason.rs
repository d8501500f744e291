//! The comparison "believing φ is more reasonable than believing ψ" for an
//! agent at a moment: probabilities first, then proof cost, then the size
//! of the smallest consistent revision that makes the formula provable.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::agent::Engine;
use crate::error::ReasonError;
use crate::formula::{Formula, Modal, Term};
use crate::kb::{format_ratio, serialize_ratio, KbDocument};
use crate::proof::{serialize_formula, Proof, ProofResult};
use crate::scalar::Scalar;

fn serialize_scalar<S: Scalar, Z: Serializer>(v: &S, z: Z) -> Result<Z::Ok, Z::Error> {
    z.serialize_str(&v.to_string())
}

/// Declared probabilities, keyed by agent, moment and canonical formula.
#[derive(Clone, Debug, Default)]
pub struct ProbTable<S> {
    entries: HashMap<(Term, Term, Formula), S>,
}

impl<S: Scalar> ProbTable<S> {
    pub fn from_kb(kb: &KbDocument) -> Self {
        let entries = kb
            .probabilities
            .iter()
            .map(|e| {
                (
                    (e.agent.clone(), e.moment.clone(), e.formula.canonical()),
                    S::from_rational(&e.value),
                )
            })
            .collect();
        ProbTable { entries }
    }

    pub fn insert(&mut self, agent: Term, moment: Term, f: &Formula, p: S) {
        self.entries.insert((agent, moment, f.canonical()), p);
    }

    /// The declared value, or one minus the value declared for the
    /// complement, or nothing.
    pub fn lookup(&self, agent: &Term, moment: &Term, f: &Formula) -> Option<S> {
        let key = |g: &Formula| (agent.clone(), moment.clone(), g.canonical());
        if let Some(p) = self.entries.get(&key(f)) {
            return Some(p.clone());
        }
        self.entries
            .get(&key(&f.complement()))
            .map(crate::scalar::complement)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Weight of a formula in revision distances: a declared candidate weight,
/// else the number of distinct non-logical symbols.
pub fn weight(kb: &KbDocument, f: &Formula) -> BigRational {
    let key = f.canonical();
    kb.candidates
        .iter()
        .find(|c| c.weight.is_some() && c.formula.canonical() == key)
        .and_then(|c| c.weight.clone())
        .unwrap_or_else(|| BigRational::from_integer(f.canonical().symbols().len().into()))
}

/// Distance between two formula sets: total weight of their symmetric
/// difference.
pub fn pi<S: Scalar>(kb: &KbDocument, g1: &[Formula], g2: &[Formula]) -> S {
    let a: BTreeSet<Formula> = g1.iter().map(Formula::canonical).collect();
    let b: BTreeSet<Formula> = g2.iter().map(Formula::canonical).collect();
    let total = a
        .symmetric_difference(&b)
        .map(|f| weight(kb, f))
        .fold(BigRational::from_integer(0.into()), |acc, w| acc + w);
    S::from_rational(&total)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Labelled {
    pub label: String,
    #[serde(serialize_with = "serialize_formula")]
    pub formula: Formula,
}

/// A revision `Γ ∪ Θ − Λ` under which the goal is provable and the revised
/// set is consistent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevisionWitness {
    pub theta: Vec<Labelled>,
    pub lambda: Vec<Labelled>,
    #[serde(serialize_with = "serialize_ratio")]
    pub distance: BigRational,
    pub proof: Proof,
}

impl RevisionWitness {
    pub fn labels(&self) -> (Vec<&str>, Vec<&str>) {
        (
            self.theta.iter().map(|l| l.label.as_str()).collect(),
            self.lambda.iter().map(|l| l.label.as_str()).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DeltaOutcome {
    Witness(RevisionWitness),
    /// Every consistent extension of the protected axioms refutes the
    /// goal, so no revision within any bound can prove it.
    Infinite,
    /// No feasible revision within the size bounds.
    Undefined,
}

impl DeltaOutcome {
    pub fn witness(&self) -> Option<&RevisionWitness> {
        match self {
            DeltaOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn distance(&self) -> Option<Distance<BigRational>> {
        match self {
            DeltaOutcome::Witness(w) => Some(Distance::Finite(w.distance.clone())),
            DeltaOutcome::Infinite => Some(Distance::Infinite),
            DeltaOutcome::Undefined => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Distance<S> {
    pub fn convert<T: Scalar>(&self) -> Distance<T>
    where
        S: Into<BigRational>,
    {
        match self {
            Distance::Finite(v) => Distance::Finite(T::from_rational(&v.clone().into())),
            Distance::Infinite => Distance::Infinite,
        }
    }

    pub fn less(&self, other: &Self) -> bool {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a < b,
            (Distance::Finite(_), Distance::Infinite) => true,
            _ => false,
        }
    }
}

impl<S: Scalar> fmt::Display for Distance<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl<S: Scalar> Serialize for Distance<S> {
    fn serialize<Z: Serializer>(&self, z: Z) -> Result<Z::Ok, Z::Error> {
        z.serialize_str(&self.to_string())
    }
}

/// A candidate addition or removal during the revision search.
#[derive(Clone, Debug)]
struct Move {
    label: String,
    formula: Formula,
    weight: BigRational,
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |l: &usize| l + 1);
            for i in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Label used for the goal when it is added to its own revision.
pub const GOAL_LABEL: &str = "goal";

impl Engine<'_> {
    /// Smallest revision of the background theory under which `goal` is
    /// agent-provable and the revised set consistent.
    pub fn delta(&self, agent: &Term, moment: &Term, goal: &Formula) -> Result<DeltaOutcome, ReasonError> {
        self.kb.check_agent(agent)?;
        self.kb.check_moment(moment)?;
        let key = (agent.clone(), moment.clone(), goal.canonical());
        if let Some(d) = self.delta_memo.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d = self.delta_search(agent, moment, goal)?;
        self.delta_memo.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    fn delta_search(&self, agent: &Term, moment: &Term, goal: &Formula) -> Result<DeltaOutcome, ReasonError> {
        let kb = self.kb;
        let gamma = kb.background();
        let in_gamma: BTreeSet<Formula> = gamma.iter().map(Formula::canonical).collect();
        let mut adds: Vec<Move> = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &kb.candidates {
            let key = c.formula.canonical();
            if !in_gamma.contains(&key) && seen.insert(key) {
                adds.push(Move {
                    label: c.label.clone(),
                    formula: c.formula.clone(),
                    weight: weight(kb, &c.formula),
                });
            }
        }
        if kb.params.trivial_addition {
            let key = goal.canonical();
            if !in_gamma.contains(&key) && seen.insert(key) {
                adds.push(Move {
                    label: GOAL_LABEL.into(),
                    formula: goal.clone(),
                    weight: weight(kb, goal),
                });
            }
        }
        let removes: Vec<Move> = kb
            .axioms
            .iter()
            .filter(|a| !a.certain)
            .map(|a| Move {
                label: a.label.clone(),
                formula: a.formula.clone(),
                weight: weight(kb, &a.formula),
            })
            .collect();

        let mut pairs = Vec::new();
        for th in subsets(adds.len(), kb.params.add_max) {
            for la in subsets(removes.len(), kb.params.remove_max) {
                let dist = th
                    .iter()
                    .map(|&i| &adds[i].weight)
                    .chain(la.iter().map(|&i| &removes[i].weight))
                    .fold(BigRational::from_integer(0.into()), |a, w| a + w);
                let mut tl: Vec<&str> = th.iter().map(|&i| adds[i].label.as_str()).collect();
                let mut ll: Vec<&str> = la.iter().map(|&i| removes[i].label.as_str()).collect();
                tl.sort();
                ll.sort();
                let size = th.len() + la.len();
                let labels: (Vec<String>, Vec<String>) = (
                    tl.into_iter().map(String::from).collect(),
                    ll.into_iter().map(String::from).collect(),
                );
                pairs.push((dist, size, labels, th.clone(), la));
            }
        }
        pairs.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));

        for (dist, _, _, th, la) in pairs {
            let removed: BTreeSet<Formula> = la.iter().map(|&i| removes[i].formula.canonical()).collect();
            let mut set: Vec<Formula> = gamma
                .iter()
                .filter(|f| !removed.contains(&f.canonical()))
                .cloned()
                .collect();
            set.extend(th.iter().map(|&i| adds[i].formula.clone()));
            let ProofResult::Proved { proof } = self.prove_in(&set, agent, moment, goal)? else {
                continue;
            };
            if self.consistent_in(&set, agent, moment) != Some(true) {
                continue;
            }
            let lab = |m: &Move| Labelled {
                label: m.label.clone(),
                formula: m.formula.clone(),
            };
            return Ok(DeltaOutcome::Witness(RevisionWitness {
                theta: th.iter().map(|&i| lab(&adds[i])).collect(),
                lambda: la.iter().map(|&i| lab(&removes[i])).collect(),
                distance: dist,
                proof,
            }));
        }

        let core: Vec<Formula> = kb
            .axioms
            .iter()
            .filter(|a| a.certain)
            .map(|a| a.formula.clone())
            .chain(crate::ec::ec_axioms(kb.params.ec_flavor))
            .collect();
        let refuted = matches!(self.prove_in(&core, agent, moment, goal)?, ProofResult::Refuted { .. })
            || *goal == Formula::Bottom;
        Ok(if refuted {
            DeltaOutcome::Infinite
        } else {
            DeltaOutcome::Undefined
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    I,
    II,
    III,
    Inapplicable,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::I => "Clause I",
            Clause::II => "Clause II",
            Clause::III => "Clause III",
            Clause::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[serde(bound(serialize = ""))]
pub enum Evidence<S: Scalar> {
    Probabilities {
        #[serde(serialize_with = "serialize_scalar")]
        left: S,
        #[serde(serialize_with = "serialize_scalar")]
        right: S,
    },
    ProofCosts {
        #[serde(serialize_with = "serialize_scalar")]
        left: S,
        #[serde(serialize_with = "serialize_scalar")]
        right: S,
        left_steps: usize,
        right_steps: usize,
    },
    Distances {
        left: Option<Distance<S>>,
        right: Option<Distance<S>>,
        left_witness: Option<Box<RevisionWitness>>,
        right_witness: Option<Box<RevisionWitness>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Verdict<S: Scalar> {
    #[serde(serialize_with = "serialize_formula")]
    pub left: Formula,
    #[serde(serialize_with = "serialize_formula")]
    pub right: Formula,
    pub holds: bool,
    pub clause: Clause,
    pub evidence: Evidence<S>,
}

impl<S: Scalar> Verdict<S> {
    /// The clause that decided the verdict, if one applied.
    pub fn decided_by(&self) -> Option<Clause> {
        (self.clause != Clause::Inapplicable).then_some(self.clause)
    }
}

impl Engine<'_> {
    /// Probability used by the first clause. A belief of the agent at the
    /// moment of comparison is read through to its content.
    pub fn pr<S: Scalar>(&self, table: &ProbTable<S>, agent: &Term, moment: &Term, f: &Formula) -> Option<S> {
        if let Formula::Modal(Modal::Believes, a, t, body) = f {
            if a == agent && t == moment {
                return table.lookup(agent, moment, body);
            }
        }
        table.lookup(agent, moment, f)
    }

    pub fn more_reasonable<S: Scalar>(
        &self,
        table: &ProbTable<S>,
        agent: &Term,
        moment: &Term,
        f: &Formula,
        g: &Formula,
    ) -> Result<Verdict<S>, ReasonError> {
        let verdict = |holds, clause, evidence| Verdict {
            left: f.clone(),
            right: g.clone(),
            holds,
            clause,
            evidence,
        };
        self.kb.check_agent(agent)?;
        self.kb.check_moment(moment)?;
        if let (Some(pf), Some(pg)) = (self.pr(table, agent, moment, f), self.pr(table, agent, moment, g)) {
            return Ok(verdict(pf > pg, Clause::I, Evidence::Probabilities { left: pf, right: pg }));
        }
        let rf = self.prove_for_agent(agent, moment, f)?;
        let rg = self.prove_for_agent(agent, moment, g)?;
        if let (Some(p), Some(q)) = (rf.proof(), rg.proof()) {
            let (cf, cg): (S, S) = (p.cost(), q.cost());
            return Ok(verdict(
                cf < cg,
                Clause::II,
                Evidence::ProofCosts {
                    left: cf,
                    right: cg,
                    left_steps: p.total_steps(),
                    right_steps: q.total_steps(),
                },
            ));
        }
        let df = self.delta(agent, moment, f)?;
        let dg = self.delta(agent, moment, g)?;
        let conv = |d: &DeltaOutcome| d.distance().map(|x| x.convert::<S>());
        let (lf, lg) = (conv(&df), conv(&dg));
        let evidence = Evidence::Distances {
            left: lf.clone(),
            right: lg.clone(),
            left_witness: df.witness().cloned().map(Box::new),
            right_witness: dg.witness().cloned().map(Box::new),
        };
        Ok(match (lf, lg) {
            (Some(a), Some(b)) => verdict(a.less(&b), Clause::III, evidence),
            _ => verdict(false, Clause::Inapplicable, evidence),
        })
    }
}

/// Exact rendering used in traces.
pub fn show_ratio(r: &BigRational) -> String {
    format_ratio(r)
}
