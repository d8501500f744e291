//! Agent-relative provability: what an agent can derive at a moment from
//! the formulas it holds, with perception turned into belief and positive
//! introspection over its own beliefs.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::check::{CheckError, Checker};
use crate::context::split_frames;
use crate::ec::{closed_world_clipped, EcFlavor};
use crate::error::ReasonError;
use crate::formula::{Formula, Modal, Term};
use crate::kb::KbDocument;
use crate::proof::{Lemma, Proof, ProofResult};
use crate::prover::Problem;

/// Premises an agent reasons from, plus introspective facts with their
/// justifications.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct View {
    pub premises: Vec<Formula>,
    pub lemmas: Vec<Lemma>,
}

type ProveKey = (Vec<Formula>, Formula, usize);

pub struct Engine<'k> {
    pub kb: &'k KbDocument,
    pub depth: usize,
    pub consistency_depth: usize,
    prove_memo: RefCell<HashMap<ProveKey, ProofResult>>,
    consistent_memo: RefCell<HashMap<(Vec<Formula>, Term, Term), Option<bool>>>,
    pub(crate) delta_memo: RefCell<HashMap<(Term, Term, Formula), crate::reason::DeltaOutcome>>,
}

fn dedup(fs: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    fs.into_iter().filter(|f| seen.insert(f.canonical())).collect()
}

impl<'k> Engine<'k> {
    pub fn new(kb: &'k KbDocument) -> Self {
        Engine {
            kb,
            depth: kb.params.proof_depth,
            consistency_depth: kb.params.consistency_depth,
            prove_memo: RefCell::default(),
            consistent_memo: RefCell::default(),
            delta_memo: RefCell::default(),
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    fn problem<'a>(&'a self, premises: &'a [Formula], lemmas: &'a [Lemma]) -> Problem<'a> {
        Problem {
            signature: &self.kb.signature,
            order: &self.kb.order,
            premises,
            lemmas,
        }
    }

    /// Contents of `set` available to `agent` at `moment`: beliefs held at
    /// or before it, perceptions strictly before it, and, with
    /// `include_plain`, every other piece unchanged.
    pub fn base(&self, set: &[Formula], agent: &Term, moment: &Term, include_plain: bool) -> Vec<Formula> {
        let order = &self.kb.order;
        let mut out = Vec::new();
        for f in set {
            for (frame, body, positive) in split_frames(f) {
                match frame {
                    None => {
                        if include_plain {
                            out.push(body)
                        }
                    }
                    Some(fr)
                        if positive
                            && fr.agent == *agent
                            && match fr.modal {
                                Modal::Believes => order.not_after(&fr.moment, moment),
                                Modal::Perceives => order.holds(&fr.moment, moment),
                                Modal::Withholds => false,
                            } =>
                    {
                        out.push(body)
                    }
                    Some(fr) => {
                        if include_plain {
                            let m = Formula::Modal(fr.modal, fr.agent, fr.moment, Box::new(body));
                            out.push(if positive { m } else { crate::formula::not(m) });
                        }
                    }
                }
            }
        }
        dedup(out)
    }

    pub fn plain_prove(&self, premises: &[Formula], goal: &Formula) -> ProofResult {
        let mut key_premises: Vec<Formula> = premises.iter().map(Formula::canonical).collect();
        key_premises.sort();
        let key = (key_premises, goal.canonical(), self.depth);
        if let Some(r) = self.prove_memo.borrow().get(&key) {
            return r.clone();
        }
        let r = self.problem(premises, &[]).prove(goal, self.depth);
        self.prove_memo.borrow_mut().insert(key, r.clone());
        r
    }

    fn closed_world(&self, premises: &[Formula], extra: &Formula) -> Vec<Formula> {
        if self.kb.params.ec_flavor != EcFlavor::Inertial {
            return Vec::new();
        }
        match self.problem(premises, &[]).universe(extra) {
            Ok(u) => closed_world_clipped(&u, &self.kb.order, premises),
            Err(_) => Vec::new(),
        }
    }

    /// The agent's premises at `moment` drawn from `set`, with introspective
    /// lemmas for belief atoms mentioned in the premises or in `goal`.
    pub fn view(&self, set: &[Formula], agent: &Term, moment: &Term, goal: &Formula) -> View {
        let mut premises = self.base(set, agent, moment, true);
        premises.extend(self.closed_world(&premises, goal));
        let mut atoms = BTreeSet::new();
        for f in premises.iter().chain(std::iter::once(goal)) {
            f.expand_sugar().walk(&mut |g| {
                if let Formula::Modal(Modal::Believes, a, t, _) = g {
                    if a.is_ground() && t.is_ground() {
                        atoms.insert(g.clone());
                    }
                }
            });
        }
        let mut lemmas = Vec::new();
        for fact in atoms {
            let Formula::Modal(_, x, t, body) = &fact else { unreachable!() };
            if let Some(sub) = self.lemma_premises(set, &premises, agent, moment, x, t) {
                if let ProofResult::Proved { proof } = self.plain_prove(&sub, body) {
                    lemmas.push(Lemma { fact: fact.clone(), proof });
                }
            }
        }
        View { premises, lemmas }
    }

    /// Premises for proving the content of `B(x, t, ·)` inside the view of
    /// `agent` at `moment`.
    fn lemma_premises(
        &self,
        set: &[Formula],
        view: &[Formula],
        agent: &Term,
        moment: &Term,
        x: &Term,
        t: &Term,
    ) -> Option<Vec<Formula>> {
        if x == agent {
            if !self.kb.order.not_after(t, moment) {
                return None;
            }
            let mut sub = self.base(set, agent, t, true);
            sub.extend(self.closed_world(&sub, &Formula::Top));
            Some(sub)
        } else {
            let sub = self.base(view, x, t, false);
            (!sub.is_empty()).then_some(sub)
        }
    }

    fn check_args(&self, agent: &Term, moment: &Term) -> Result<(), ReasonError> {
        self.kb.check_agent(agent)?;
        self.kb.check_moment(moment)
    }

    /// Splits a goal `B(agent, t', ψ)` with `t' ≤ moment` into `(t', ψ)`;
    /// other goals are proved as they stand at `moment`.
    fn target(&self, agent: &Term, moment: &Term, goal: &Formula) -> (Term, Formula) {
        if let Formula::Modal(Modal::Believes, a, t, body) = goal {
            if a == agent && self.kb.order.not_after(t, moment) {
                return (t.clone(), (**body).clone());
            }
        }
        (moment.clone(), goal.clone())
    }

    /// Agent-relative proof of `goal` from `set`. For a goal
    /// `B(agent, t', ψ)` the returned proof is a proof of `ψ` in the view at `t'`.
    pub fn prove_in(&self, set: &[Formula], agent: &Term, moment: &Term, goal: &Formula) -> Result<ProofResult, ReasonError> {
        self.check_args(agent, moment)?;
        let (t, target) = self.target(agent, moment, goal);
        let view = self.view(set, agent, &t, &target);
        if view.lemmas.is_empty() {
            return Ok(self.plain_prove(&view.premises, &target));
        }
        Ok(self.problem(&view.premises, &view.lemmas).prove(&target, self.depth))
    }

    pub fn prove_for_agent(&self, agent: &Term, moment: &Term, goal: &Formula) -> Result<ProofResult, ReasonError> {
        self.prove_in(&self.kb.background(), agent, moment, goal)
    }

    /// Consistency of the agent's view of `set`; `None` when undecided.
    pub fn consistent_in(&self, set: &[Formula], agent: &Term, moment: &Term) -> Option<bool> {
        let mut key: Vec<Formula> = set.iter().map(Formula::canonical).collect();
        key.sort();
        let key = (key, agent.clone(), moment.clone());
        if let Some(r) = self.consistent_memo.borrow().get(&key) {
            return *r;
        }
        let view = self.view(set, agent, moment, &Formula::Bottom);
        let r = self
            .problem(&view.premises, &view.lemmas)
            .consistent(self.consistency_depth);
        self.consistent_memo.borrow_mut().insert(key, r);
        r
    }

    /// Replays an agent-relative proof from [`Engine::prove_in`].
    pub fn check(&self, proof: &Proof, set: &[Formula], agent: &Term, moment: &Term, goal: &Formula) -> Result<(), CheckError> {
        let (t, target) = self.target(agent, moment, goal);
        let view = self.view(set, agent, &t, &target);
        let premises = view.premises.clone();
        let lemma_base = |l: &Lemma| -> Option<Vec<Formula>> {
            let Formula::Modal(Modal::Believes, x, lt, _) = &l.fact else {
                return None;
            };
            self.lemma_premises(set, &premises, agent, &t, x, lt)
        };
        Checker {
            signature: &self.kb.signature,
            order: &self.kb.order,
            lemma_base: Some(&lemma_base),
        }
        .check(proof, &view.premises)
    }
}
