//! Step-by-step proof checking, independent of the search that produced the
//! proof. Clause-form steps are checked semantically rather than by
//! re-running the clause transformation.

use std::collections::{BTreeSet, HashMap};

use crate::formula::{Formula, Modal};
use crate::ground::Universe;
use crate::moments::MomentOrder;
use crate::proof::{Lemma, Proof, Rule};
use crate::prop::{atom_key, interpreted};
use crate::sort::Signature;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("proof has no steps")]
    Empty,
    #[error("step {step} refers to step {input}, which is not earlier")]
    ForwardReference { step: usize, input: usize },
    #[error("step {step} has the wrong number of inputs")]
    Arity { step: usize },
    #[error("step {step} cites a premise outside the premise set")]
    NotAPremise { step: usize },
    #[error("step {step} is not the negated goal")]
    BadHypothesis { step: usize },
    #[error("step {step} is not a clause of its input")]
    BadClausify { step: usize },
    #[error("step {step} is not a resolvent of its inputs")]
    BadResolve { step: usize },
    #[error("step {step} cites an invalid lemma: {reason}")]
    BadLemma { step: usize, reason: String },
    #[error("the final step does not conclude the goal from the empty clause")]
    BadConclusion,
    #[error("the Herbrand universe is not finite")]
    NotFinite,
}

/// Premises available to lemma subproofs, by lemma fact.
pub type LemmaBase<'a> = &'a dyn Fn(&Lemma) -> Option<Vec<Formula>>;

#[derive(Clone, Copy)]
pub struct Checker<'a> {
    pub signature: &'a Signature,
    pub order: &'a MomentOrder,
    pub lemma_base: Option<LemmaBase<'a>>,
}

type Literal = (Formula, bool);

impl Checker<'_> {
    pub fn check(&self, proof: &Proof, gamma: &[Formula]) -> Result<(), CheckError> {
        let steps = &proof.steps;
        let last = steps.last().ok_or(CheckError::Empty)?;
        let goal_key = proof.goal.canonical();
        if steps.len() == 1 {
            return match last.rule {
                Rule::Premise if last.output.canonical() == goal_key => self.premise(0, &last.output, gamma),
                Rule::Lemma(k) if last.output.canonical() == goal_key => self.lemma(0, k, &last.output, proof),
                _ => Err(CheckError::BadConclusion),
            };
        }
        let facts = proof.lemmas.iter().map(|l| &l.fact);
        let universe = Universe::new(
            self.signature,
            gamma.iter().chain(facts).chain(std::iter::once(&proof.goal)),
        )
        .map_err(|_| CheckError::NotFinite)?;
        for (i, s) in steps.iter().enumerate() {
            if let Some(&input) = s.inputs.iter().find(|&&j| j >= i) {
                return Err(CheckError::ForwardReference { step: i, input });
            }
            let arity = match s.rule {
                Rule::Premise | Rule::Hypothesis | Rule::Lemma(_) => 0,
                Rule::Clausify | Rule::Conclude => 1,
                Rule::Resolve => 2,
            };
            if s.inputs.len() != arity {
                return Err(CheckError::Arity { step: i });
            }
            match s.rule {
                Rule::Premise => self.premise(i, &s.output, gamma)?,
                Rule::Lemma(k) => self.lemma(i, k, &s.output, proof)?,
                Rule::Hypothesis => {
                    if s.output.canonical() != Formula::Not(Box::new(proof.goal.clone())).canonical() {
                        return Err(CheckError::BadHypothesis { step: i });
                    }
                }
                Rule::Clausify => {
                    let source = &steps[s.inputs[0]].output;
                    let ok = clause_literals(&s.output).is_some_and(|lits| {
                        let mut assign = HashMap::new();
                        for (atom, sign) in &lits {
                            if assign.insert(atom.clone(), !sign) == Some(*sign) {
                                return false;
                            }
                        }
                        self.eval(source, &assign, &universe) == Some(false)
                    });
                    if !ok {
                        return Err(CheckError::BadClausify { step: i });
                    }
                }
                Rule::Resolve => {
                    let a = clause_literals(&steps[s.inputs[0]].output);
                    let b = clause_literals(&steps[s.inputs[1]].output);
                    let r = clause_literals(&s.output);
                    let ok = match (a, b, r) {
                        (Some(a), Some(b), Some(r)) => is_resolvent(&a, &b, &r) || is_resolvent(&b, &a, &r),
                        _ => false,
                    };
                    if !ok {
                        return Err(CheckError::BadResolve { step: i });
                    }
                }
                Rule::Conclude => {
                    if i != steps.len() - 1 || steps[s.inputs[0]].output != Formula::Bottom || s.output != proof.goal {
                        return Err(CheckError::BadConclusion);
                    }
                }
            }
        }
        if last.rule != Rule::Conclude {
            return Err(CheckError::BadConclusion);
        }
        Ok(())
    }

    fn premise(&self, step: usize, f: &Formula, gamma: &[Formula]) -> Result<(), CheckError> {
        let key = f.canonical();
        if gamma.iter().any(|g| g.canonical() == key) {
            Ok(())
        } else {
            Err(CheckError::NotAPremise { step })
        }
    }

    fn lemma(&self, step: usize, k: usize, out: &Formula, proof: &Proof) -> Result<(), CheckError> {
        let bad = |reason: &str| CheckError::BadLemma {
            step,
            reason: reason.to_string(),
        };
        let lemma = proof.lemmas.get(k).ok_or_else(|| bad("index out of range"))?;
        if lemma.fact.canonical() != out.canonical() {
            return Err(bad("output differs from the lemma fact"));
        }
        let Formula::Modal(Modal::Believes, _, _, body) = &lemma.fact else {
            return Err(bad("lemma fact is not a belief"));
        };
        if lemma.proof.goal.canonical() != body.canonical() {
            return Err(bad("subproof proves a different formula"));
        }
        let base = self
            .lemma_base
            .and_then(|f| f(lemma))
            .ok_or_else(|| bad("no premise set for the lemma"))?;
        self.check(&lemma.proof, &base)
            .map_err(|e| bad(&format!("subproof: {e}")))
    }

    /// Three-valued evaluation; `None` when the partial assignment leaves
    /// the value open.
    fn eval(&self, f: &Formula, assign: &HashMap<Formula, bool>, u: &Universe) -> Option<bool> {
        match f {
            Formula::Top => Some(true),
            Formula::Bottom => Some(false),
            Formula::Atom(..) => interpreted(f, self.order).or_else(|| assign.get(&atom_key(f)).copied()),
            Formula::Modal(Modal::Withholds, a, t, body) => {
                let b = |g: Formula| Formula::Modal(Modal::Believes, a.clone(), t.clone(), Box::new(g));
                let yes = self.eval(&b((**body).clone()), assign, u)?;
                let no = self.eval(&b(Formula::Not(body.clone())), assign, u)?;
                Some(!yes && !no)
            }
            Formula::Modal(..) => assign.get(&atom_key(&u.ground(f))).copied(),
            Formula::Not(a) => self.eval(a, assign, u).map(|v| !v),
            Formula::And(xs) => kleene_all(xs.iter().map(|x| self.eval(x, assign, u))),
            Formula::Or(xs) => kleene_any(xs.iter().map(|x| self.eval(x, assign, u))),
            Formula::Implies(a, b) => kleene_any([self.eval(a, assign, u).map(|v| !v), self.eval(b, assign, u)]),
            Formula::Iff(a, b) => Some(self.eval(a, assign, u)? == self.eval(b, assign, u)?),
            Formula::Xor(xs) => {
                let vals: Vec<Option<bool>> = xs.iter().map(|x| self.eval(x, assign, u)).collect();
                let trues = vals.iter().filter(|v| **v == Some(true)).count();
                if trues >= 2 {
                    Some(false)
                } else if vals.iter().all(Option::is_some) {
                    Some(trues == 1)
                } else {
                    None
                }
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let vals = u
                    .terms(&v.sort)
                    .iter()
                    .map(|t| self.eval(&body.subst_unchecked(v, t), assign, u));
                if matches!(f, Formula::Forall(..)) {
                    kleene_all(vals)
                } else {
                    kleene_any(vals)
                }
            }
        }
    }
}

fn kleene_all(vals: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut open = false;
    for v in vals {
        match v {
            Some(false) => return Some(false),
            None => open = true,
            _ => {}
        }
    }
    (!open).then_some(true)
}

fn kleene_any(vals: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    kleene_all(vals.into_iter().map(|v| v.map(|b| !b))).map(|b| !b)
}

/// Literal set of a clause formula: `⊥`, a literal, or a disjunction of
/// literals.
fn clause_literals(f: &Formula) -> Option<BTreeSet<Literal>> {
    fn lit(f: &Formula) -> Option<Literal> {
        match f {
            Formula::Not(a) if is_atomic(a) => Some((atom_key(a), false)),
            a if is_atomic(a) => Some((atom_key(a), true)),
            _ => None,
        }
    }
    match f {
        Formula::Bottom => Some(BTreeSet::new()),
        Formula::Or(xs) => xs.iter().map(lit).collect(),
        other => lit(other).map(|l| BTreeSet::from([l])),
    }
}

fn is_atomic(f: &Formula) -> bool {
    matches!(f, Formula::Atom(..) | Formula::Modal(..))
}

fn is_resolvent(a: &BTreeSet<Literal>, b: &BTreeSet<Literal>, r: &BTreeSet<Literal>) -> bool {
    a.iter().any(|(atom, sign)| {
        let comp = (atom.clone(), !sign);
        if !b.contains(&comp) {
            return false;
        }
        let mut expect: BTreeSet<Literal> = a.iter().filter(|l| l.0 != *atom || l.1 != *sign).cloned().collect();
        expect.extend(b.iter().filter(|l| **l != comp).cloned());
        expect == *r
    })
}
