//! Strength levels of belief, from acceptable to certain; the belief store
//! with its consistency condition; and the strength-propagating rules for
//! perception and belief.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::agent::Engine;
use crate::context::split_frames;
use crate::error::ReasonError;
use crate::formula::{believes, withholds, Formula, Modal, Term};
use crate::proof::{serialize_formula, ProofResult};
use crate::reason::{Clause, Evidence, ProbTable, Verdict};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrengthLevel {
    None,
    Acceptable,
    Presumption,
    BeyondReasonableDoubt,
    Evident,
    Certain,
}

impl StrengthLevel {
    pub const ALL: [StrengthLevel; 6] = [
        StrengthLevel::None,
        StrengthLevel::Acceptable,
        StrengthLevel::Presumption,
        StrengthLevel::BeyondReasonableDoubt,
        StrengthLevel::Evident,
        StrengthLevel::Certain,
    ];

    pub fn from_u8(n: u8) -> Option<Self> {
        Self::ALL.get(n as usize).copied()
    }

    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            StrengthLevel::None => "none",
            StrengthLevel::Acceptable => "acceptable",
            StrengthLevel::Presumption => "some presumption in favor",
            StrengthLevel::BeyondReasonableDoubt => "beyond reasonable doubt",
            StrengthLevel::Evident => "evident",
            StrengthLevel::Certain => "certain",
        }
    }

    /// Process exit status for the level: the level itself, or 10 for none.
    pub fn exit_code(self) -> i32 {
        match self {
            StrengthLevel::None => 10,
            l => l.value() as i32,
        }
    }
}

impl fmt::Display for StrengthLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for StrengthLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            StrengthLevel::None => s.serialize_str("none"),
            l => s.serialize_u8(l.value()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[serde(bound(serialize = ""))]
pub enum TrailEntry<S: Scalar> {
    /// The comparison behind one level's defining condition.
    Comparison { level: u8, verdict: Verdict<S> },
    /// A pool formula more reasonable to believe than the judged one.
    Competitor {
        #[serde(serialize_with = "serialize_formula")]
        formula: Formula,
        certain: bool,
    },
    /// The level was reached in the belief store rather than by definition.
    Stored { level: u8, origin: Origin },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct StrengthJudgment<S: Scalar> {
    pub agent: Term,
    pub moment: Term,
    #[serde(serialize_with = "serialize_formula")]
    pub formula: Formula,
    pub level: StrengthLevel,
    pub satisfied: BTreeSet<u8>,
    pub trail: Vec<TrailEntry<S>>,
    #[serde(serialize_with = "serialize_formulas")]
    pub pool: Vec<Formula>,
}

fn serialize_formulas<S: Serializer>(fs: &[Formula], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(fs.iter().map(|f| f.to_string()))
}

/// True when the satisfied levels are downward closed.
pub fn check_subsumption(satisfied: &BTreeSet<u8>) -> bool {
    satisfied.iter().all(|&p| (1..p).all(|q| satisfied.contains(&q)))
}

impl<S: Scalar> StrengthJudgment<S> {
    pub fn subsumption_holds(&self) -> bool {
        check_subsumption(&self.satisfied)
    }

    pub fn verdict(&self, level: u8) -> Option<&Verdict<S>> {
        self.trail.iter().find_map(|t| match t {
            TrailEntry::Comparison { level: l, verdict } if *l == level => Some(verdict),
            _ => None,
        })
    }
}

/// Where a stored belief came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Origin {
    /// An axiom the agent holds as certain.
    Certain { label: String },
    /// Perception at an earlier moment.
    Percept {
        #[serde(serialize_with = "serialize_formula")]
        percept: Formula,
    },
    /// The level given by the strength definitions.
    Classified,
    /// Derived by the belief rule from stored premises.
    Derived {
        #[serde(serialize_with = "serialize_formulas")]
        premises: Vec<Formula>,
        levels: Vec<u8>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoredBelief {
    pub agent: Term,
    pub moment: Term,
    #[serde(serialize_with = "serialize_formula")]
    pub formula: Formula,
    pub level: u8,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("rejected B{level}({formula}): its negation is already held at level {level}")]
    Inconsistent { formula: String, level: u8 },
    #[error("rejected a belief in falsum")]
    Falsum,
    #[error("level {0} is outside 1..=5")]
    Level(u8),
}

/// Graded beliefs keyed by agent, moment and canonical formula.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BeliefStore {
    entries: BTreeMap<(Term, Term, Formula), StoredBelief>,
    /// Insertions refused by the consistency condition.
    pub rejected: Vec<String>,
}

impl Serialize for BeliefStore {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BeliefStore", 2)?;
        st.serialize_field("beliefs", &self.entries.values().collect::<Vec<_>>())?;
        st.serialize_field("rejected", &self.rejected)?;
        st.end()
    }
}

impl BeliefStore {
    pub fn get(&self, agent: &Term, moment: &Term, f: &Formula) -> Option<&StoredBelief> {
        self.entries.get(&(agent.clone(), moment.clone(), f.canonical()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredBelief> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds a belief, keeping the higher level when one is already stored.
    /// Returns whether the store changed.
    pub fn insert(&mut self, b: StoredBelief) -> Result<bool, StoreError> {
        if !(1..=5).contains(&b.level) {
            return Err(StoreError::Level(b.level));
        }
        let key = b.formula.canonical();
        if key == Formula::Bottom || key == Formula::Not(Box::new(Formula::Top)) {
            return Err(StoreError::Falsum);
        }
        let key = (b.agent.clone(), b.moment.clone(), key);
        if self.entries.get(&key).is_some_and(|old| old.level >= b.level) {
            return Ok(false);
        }
        let comp = (b.agent.clone(), b.moment.clone(), b.formula.complement().canonical());
        if self.entries.get(&comp).is_some_and(|c| c.level == b.level) {
            return Err(StoreError::Inconsistent {
                formula: b.formula.to_string(),
                level: b.level,
            });
        }
        self.entries.insert(key, b);
        Ok(true)
    }

    /// Inserts, recording a refusal instead of failing.
    pub fn offer(&mut self, b: StoredBelief) -> bool {
        match self.insert(b) {
            Ok(changed) => changed,
            Err(e) => {
                self.rejected.push(e.to_string());
                false
            }
        }
    }

    /// Beliefs of `agent` held at or before `moment`.
    pub fn held<'a>(
        &'a self,
        engine: &'a Engine<'_>,
        agent: &'a Term,
        moment: &'a Term,
    ) -> impl Iterator<Item = &'a StoredBelief> + 'a {
        self.entries
            .values()
            .filter(move |b| b.agent == *agent && engine.kb.order.not_after(&b.moment, moment))
    }

    /// No formula is held together with its negation at the same level.
    pub fn is_consistent(&self) -> bool {
        self.entries.values().all(|b| {
            let comp = (b.agent.clone(), b.moment.clone(), b.formula.complement().canonical());
            self.entries.get(&comp).is_none_or(|c| c.level != b.level)
        }) && !self.entries.keys().any(|(_, _, f)| *f == Formula::Bottom)
    }
}

/// Outcome of one application of the belief rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum RsbOutcome {
    Fired(StoredBelief),
    /// Premise levels too far apart.
    Blocked { spread: u8, u: u8 },
}

impl Engine<'_> {
    /// Perception at `t1` becomes certain belief at any later `t2`.
    pub fn infer_rsp(&self, store: &mut BeliefStore, percept: &Formula, t2: &Term) -> Result<StoredBelief, ReasonError> {
        let Formula::Modal(Modal::Perceives, a, t1, body) = percept else {
            return Err(ReasonError::NotAPercept);
        };
        self.kb.check_agent(a)?;
        if !self.kb.order.before(t1, t2)? {
            return Err(ReasonError::NotBefore {
                from: t1.to_string(),
                to: t2.to_string(),
            });
        }
        let b = StoredBelief {
            agent: a.clone(),
            moment: t2.clone(),
            formula: (**body).clone(),
            level: 5,
            origin: Origin::Percept {
                percept: percept.clone(),
            },
        };
        store.offer(b.clone());
        Ok(b)
    }

    /// Belief rule: premises at levels `s₁…sₘ`, all held no later than `t`,
    /// that entail `conclusion` yield belief at `min sᵢ`, provided
    /// `max sᵢ − min sᵢ ≤ u`.
    pub fn infer_rsb(&self, premises: &[StoredBelief], conclusion: &Formula, t: &Term, u: u8) -> Result<RsbOutcome, ReasonError> {
        let Some(first) = premises.first() else {
            return Err(ReasonError::EntailmentFailed);
        };
        if premises.iter().any(|p| p.agent != first.agent) {
            return Err(ReasonError::MixedAgents);
        }
        self.kb.check_moment(t)?;
        for p in premises {
            if !self.kb.order.not_after(&p.moment, t) {
                return Err(ReasonError::Later {
                    from: p.moment.to_string(),
                    to: t.to_string(),
                });
            }
        }
        let lo = premises.iter().map(|p| p.level).min().unwrap();
        let hi = premises.iter().map(|p| p.level).max().unwrap();
        if hi - lo > u {
            return Ok(RsbOutcome::Blocked { spread: hi - lo, u });
        }
        let fs: Vec<Formula> = premises.iter().map(|p| p.formula.clone()).collect();
        if !self.plain_prove(&fs, conclusion).is_proved() {
            return Err(ReasonError::EntailmentFailed);
        }
        Ok(RsbOutcome::Fired(StoredBelief {
            agent: first.agent.clone(),
            moment: t.clone(),
            formula: conclusion.clone(),
            level: lo,
            origin: Origin::Derived {
                premises: fs,
                levels: premises.iter().map(|p| p.level).collect(),
            },
        }))
    }

    /// Strength of belief in `f` by the level definitions, comparing
    /// against `pool` for the evident and certain levels.
    pub fn classify<S: Scalar>(
        &self,
        table: &ProbTable<S>,
        agent: &Term,
        moment: &Term,
        f: &Formula,
        pool: &[Formula],
    ) -> Result<StrengthJudgment<S>, ReasonError> {
        let b = |g: &Formula| believes(agent.clone(), moment.clone(), g.clone());
        let w = withholds(agent.clone(), moment.clone(), f.clone()).expand_sugar();
        let bf = b(f);
        let mut trail = Vec::new();
        let mut satisfied = BTreeSet::new();

        let v1 = self.more_reasonable(table, agent, moment, &w, &bf)?;
        if !v1.holds {
            satisfied.insert(1);
        }
        trail.push(TrailEntry::Comparison { level: 1, verdict: v1 });
        let v2 = self.more_reasonable(table, agent, moment, &bf, &b(&f.complement()))?;
        if v2.holds {
            satisfied.insert(2);
        }
        trail.push(TrailEntry::Comparison { level: 2, verdict: v2 });
        let v3 = self.more_reasonable(table, agent, moment, &bf, &w)?;
        let b3 = v3.holds;
        trail.push(TrailEntry::Comparison { level: 3, verdict: v3 });
        if b3 {
            satisfied.insert(3);
            let competitors = self.competitors(table, agent, moment, f, pool)?;
            if competitors.is_empty() {
                satisfied.insert(5);
            }
            let mut all_certain = true;
            for psi in competitors {
                let certain = self.is_certain(table, agent, moment, &psi, pool)?;
                all_certain &= certain;
                trail.push(TrailEntry::Competitor { formula: psi, certain });
            }
            if all_certain {
                satisfied.insert(4);
            }
        }
        let level = satisfied
            .iter()
            .max()
            .and_then(|&l| StrengthLevel::from_u8(l))
            .unwrap_or(StrengthLevel::None);
        Ok(StrengthJudgment {
            agent: agent.clone(),
            moment: moment.clone(),
            formula: f.clone(),
            level,
            satisfied,
            trail,
            pool: pool.to_vec(),
        })
    }

    /// Pool formulas more reasonable to believe than `f`.
    fn competitors<S: Scalar>(
        &self,
        table: &ProbTable<S>,
        agent: &Term,
        moment: &Term,
        f: &Formula,
        pool: &[Formula],
    ) -> Result<Vec<Formula>, ReasonError> {
        let b = |g: &Formula| believes(agent.clone(), moment.clone(), g.clone());
        let key = f.canonical();
        let mut out = Vec::new();
        for psi in pool {
            if psi.canonical() == key {
                continue;
            }
            if self.more_reasonable(table, agent, moment, &b(psi), &b(f))?.holds {
                out.push(psi.clone());
            }
        }
        Ok(out)
    }

    /// The certain-level condition alone: beyond reasonable doubt and
    /// unbeaten within the pool.
    fn is_certain<S: Scalar>(
        &self,
        table: &ProbTable<S>,
        agent: &Term,
        moment: &Term,
        f: &Formula,
        pool: &[Formula],
    ) -> Result<bool, ReasonError> {
        let w = withholds(agent.clone(), moment.clone(), f.clone()).expand_sugar();
        let bf = believes(agent.clone(), moment.clone(), f.clone());
        if !self.more_reasonable(table, agent, moment, &bf, &w)?.holds {
            return Ok(false);
        }
        Ok(self.competitors(table, agent, moment, f, pool)?.is_empty())
    }

    /// Formulas the agent weighs at `moment`: candidates, certain axiom
    /// contents, and formulas with a declared probability (with their
    /// negations).
    pub fn considered(&self, agent: &Term, moment: &Term) -> Vec<Formula> {
        let kb = self.kb;
        let mut out: Vec<Formula> = kb.candidates.iter().map(|c| c.formula.clone()).collect();
        for a in kb.axioms.iter().filter(|a| a.certain) {
            out.extend(self.base(std::slice::from_ref(&a.formula), agent, moment, true));
        }
        for e in &kb.probabilities {
            if e.agent == *agent && e.moment == *moment {
                out.push(e.formula.clone());
                out.push(e.formula.complement());
            }
        }
        let mut seen = BTreeSet::new();
        out.retain(|f| seen.insert(f.canonical()));
        out
    }

    /// Initial store: certain axioms and percepts at level 5, then every
    /// considered formula at its defined level when that is at least 1.
    pub fn seed_store<S: Scalar>(&self, table: &ProbTable<S>, agent: &Term, moment: &Term) -> Result<BeliefStore, ReasonError> {
        self.kb.check_agent(agent)?;
        self.kb.check_moment(moment)?;
        let mut store = BeliefStore::default();
        for a in &self.kb.axioms {
            for (frame, body, positive) in split_frames(&a.formula) {
                if let Some(fr) = frame {
                    if positive && fr.modal == Modal::Perceives && fr.agent == *agent && self.kb.order.holds(&fr.moment, moment) {
                        let p = Formula::Modal(Modal::Perceives, fr.agent, fr.moment, Box::new(body));
                        self.infer_rsp(&mut store, &p, moment)?;
                    }
                }
            }
            if a.certain {
                for f in self.base(std::slice::from_ref(&a.formula), agent, moment, true) {
                    store.offer(StoredBelief {
                        agent: agent.clone(),
                        moment: moment.clone(),
                        formula: f,
                        level: 5,
                        origin: Origin::Certain { label: a.label.clone() },
                    });
                }
            }
        }
        let pool = self.considered(agent, moment);
        for f in &pool {
            if store.get(agent, moment, f).is_some() {
                continue;
            }
            let j = self.classify(table, agent, moment, f, &pool)?;
            if j.level > StrengthLevel::None {
                store.offer(StoredBelief {
                    agent: agent.clone(),
                    moment: moment.clone(),
                    formula: f.clone(),
                    level: j.level.value(),
                    origin: Origin::Classified,
                });
            }
        }
        Ok(store)
    }

    /// Forward closure of the belief rule towards the candidate formulas.
    /// Each round, for each lowest level `m`, the beliefs with levels in
    /// `m..=m+u` are tried as premises when they are jointly consistent;
    /// the derived level is the lowest level among the premises the proof
    /// actually uses.
    pub fn saturate(&self, store: &mut BeliefStore, agent: &Term, moment: &Term, rounds: usize) {
        let u = self.kb.params.u;
        let mut targets: Vec<(&str, &Formula)> = self
            .kb
            .candidates
            .iter()
            .map(|c| (c.label.as_str(), &c.formula))
            .collect();
        targets.sort_by_key(|(l, _)| *l);
        for _ in 0..rounds {
            let held: Vec<StoredBelief> = store.held(self, agent, moment).cloned().collect();
            let mut changed = false;
            for (_, target) in &targets {
                let mut best: Option<StoredBelief> = None;
                for m in 1..=5u8 {
                    let window: Vec<&StoredBelief> = held
                        .iter()
                        .filter(|b| b.level >= m && b.level <= m.saturating_add(u))
                        .collect();
                    if window.is_empty() {
                        continue;
                    }
                    let premises: Vec<Formula> = window.iter().map(|b| b.formula.clone()).collect();
                    if self.consistent_in(&premises, agent, moment) != Some(true) {
                        continue;
                    }
                    let ProofResult::Proved { proof } = self.plain_prove(&premises, target) else {
                        continue;
                    };
                    let used: Vec<&StoredBelief> = proof
                        .premises_used
                        .iter()
                        .filter_map(|p| {
                            let k = p.canonical();
                            window
                                .iter()
                                .filter(|b| b.formula.canonical() == k)
                                .max_by_key(|b| b.level)
                                .copied()
                        })
                        .collect();
                    let level = used.iter().map(|b| b.level).min().unwrap_or(5);
                    if best.as_ref().is_none_or(|b| level > b.level) {
                        best = Some(StoredBelief {
                            agent: agent.clone(),
                            moment: moment.clone(),
                            formula: (*target).clone(),
                            level,
                            origin: Origin::Derived {
                                premises: used.iter().map(|b| b.formula.clone()).collect(),
                                levels: used.iter().map(|b| b.level).collect(),
                            },
                        });
                    }
                }
                if let Some(b) = best {
                    changed |= store.offer(b);
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Seeds and saturates the store, then classifies `f` against the
    /// store's contents and the candidates. The reported level is the
    /// higher of the defined level and the stored level.
    pub fn judge<S: Scalar>(
        &self,
        table: &ProbTable<S>,
        agent: &Term,
        moment: &Term,
        f: &Formula,
    ) -> Result<(StrengthJudgment<S>, BeliefStore), ReasonError> {
        let mut store = self.seed_store(table, agent, moment)?;
        self.saturate(&mut store, agent, moment, self.kb.params.saturate_rounds);
        let mut pool: Vec<Formula> = store.held(self, agent, moment).map(|b| b.formula.clone()).collect();
        pool.extend(self.kb.candidates.iter().map(|c| c.formula.clone()));
        let mut seen = BTreeSet::new();
        pool.retain(|g| seen.insert(g.canonical()));
        let mut j = self.classify(table, agent, moment, f, &pool)?;
        if let Some(b) = store.get(agent, moment, f) {
            let raises = b.level > j.level.value();
            if raises || (b.level == j.level.value() && b.origin != Origin::Classified) {
                j.level = j.level.max(StrengthLevel::from_u8(b.level).unwrap());
                j.trail.push(TrailEntry::Stored {
                    level: b.level,
                    origin: b.origin.clone(),
                });
            }
        }
        Ok((j, store))
    }
}

/// Two-level explanation: the strength statement, then the evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub statement: String,
    pub evidence: Vec<String>,
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.statement)?;
        for e in &self.evidence {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

fn defining(level: StrengthLevel, f: &Formula) -> String {
    match level {
        StrengthLevel::None => format!("withholding {f} is more reasonable than believing it"),
        StrengthLevel::Acceptable => format!("withholding {f} is not more reasonable than believing it"),
        StrengthLevel::Presumption => format!("believing {f} is more reasonable than believing its negation"),
        StrengthLevel::BeyondReasonableDoubt => format!("believing {f} is more reasonable than withholding it"),
        StrengthLevel::Evident => {
            format!("{f} is beyond reasonable doubt and every formula more reasonable to believe is certain")
        }
        StrengthLevel::Certain => {
            format!("{f} is beyond reasonable doubt and nothing in the pool is more reasonable to believe")
        }
    }
}

pub fn describe_verdict<S: Scalar>(v: &Verdict<S>) -> String {
    let how = match &v.evidence {
        Evidence::Probabilities { left, right } => format!("Pr = {left} vs Pr = {right}"),
        Evidence::ProofCosts {
            left,
            right,
            left_steps,
            right_steps,
        } => format!("proof cost {left} ({left_steps} steps) vs {right} ({right_steps} steps)"),
        Evidence::Distances {
            left,
            right,
            left_witness,
            right_witness,
        } => {
            let side = |d: &Option<crate::reason::Distance<S>>, w: &Option<Box<crate::reason::RevisionWitness>>| {
                let d = d.as_ref().map_or("undefined".to_string(), |d| d.to_string());
                match w {
                    Some(w) => {
                        let (t, l) = w.labels();
                        format!("δ = {d} (add {{{}}}, remove {{{}}})", t.join(", "), l.join(", "))
                    }
                    None => format!("δ = {d}"),
                }
            };
            format!("{} vs {}", side(left, left_witness), side(right, right_witness))
        }
    };
    match v.clause {
        Clause::Inapplicable => format!("no clause decides: {how}"),
        c => format!("decided by {c}: {how}"),
    }
}

/// Explains a judgment by its level's defining comparison and evidence.
pub fn explain<S: Scalar>(j: &StrengthJudgment<S>) -> Explanation {
    let f = &j.formula;
    let statement = format!("{}: {}", j.level.name(), defining(j.level, f));
    let mut evidence = Vec::new();
    for t in &j.trail {
        match t {
            TrailEntry::Stored { level, origin } => evidence.push(match origin {
                Origin::Percept { percept } => format!("level {level} by the perception rule from {percept}"),
                Origin::Certain { label } => format!("level {level}: axiom {label} is held as certain"),
                Origin::Classified => format!("level {level} by the strength definitions"),
                Origin::Derived { premises, levels } => {
                    let ps: Vec<String> = premises
                        .iter()
                        .zip(levels)
                        .map(|(p, l)| format!("B{l} {p}"))
                        .collect();
                    format!("level {level} by the belief rule from {}", ps.join(", "))
                }
            }),
            TrailEntry::Comparison { level, verdict } => {
                let relevant = match j.level.value() {
                    0 => *level == 1,
                    1 => *level == 1,
                    2 => *level == 2,
                    _ => *level == 3,
                };
                if relevant {
                    evidence.push(describe_verdict(verdict));
                }
            }
            TrailEntry::Competitor { formula, certain } => evidence.push(format!(
                "believing {formula} is more reasonable{}",
                if *certain { " and it is certain" } else { " and it is not certain" }
            )),
        }
    }
    Explanation { statement, evidence }
}

/// Explains a blocked or fired belief-rule application.
pub fn explain_rsb(outcome: &RsbOutcome) -> Explanation {
    match outcome {
        RsbOutcome::Blocked { spread, u } => Explanation {
            statement: "belief rule blocked".into(),
            evidence: vec![format!("level spread {spread} > u = {u}")],
        },
        RsbOutcome::Fired(b) => Explanation {
            statement: format!("{}: {} by the belief rule", StrengthLevel::from_u8(b.level).unwrap().name(), b.formula),
            evidence: match &b.origin {
                Origin::Derived { premises, levels } => premises
                    .iter()
                    .zip(levels)
                    .map(|(p, l)| format!("premise B{l} {p}"))
                    .collect(),
                _ => vec![],
            },
        },
    }
}
