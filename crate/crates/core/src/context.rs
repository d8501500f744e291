//! Modal contextualization: peeling belief and perception prefixes off a
//! formula into explicit frames, so the remaining body can be handed to a
//! first-order prover.

use std::fmt;

use serde::Serialize;

use crate::formula::{not, Formula, Modal, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Frame {
    pub modal: Modal,
    pub agent: Term,
    pub moment: Term,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.modal.keyword(), self.agent, self.moment)
    }
}

/// A modal-free body under a stack of frames, outermost first. When
/// `positive` is false the whole framed formula is negated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContextualizedFormula {
    #[serde(serialize_with = "crate::proof::serialize_formula")]
    pub body: Formula,
    pub context: Vec<Frame>,
    pub positive: bool,
}

impl ContextualizedFormula {
    /// Reassembles the modal formula this piece stands for.
    pub fn formula(&self) -> Formula {
        let inner = rebuild(&self.context, self.body.clone());
        if self.positive {
            inner
        } else {
            not(inner)
        }
    }
}

pub fn rebuild(context: &[Frame], body: Formula) -> Formula {
    context.iter().rev().fold(body, |b, fr| {
        Formula::Modal(fr.modal, fr.agent.clone(), fr.moment.clone(), Box::new(b))
    })
}

/// Name of the opaque atom standing for a modal subformula that is not in
/// prefix position.
pub fn opaque(f: &Formula) -> Formula {
    Formula::Atom(format!("|{}|", f.canonical()), vec![])
}

/// Splits a formula into framed pieces whose conjunction is equivalent to
/// it. Conjunctions are split under positive frames; a negation directly
/// over a modal marks the piece negative, and frames below it are still
/// peeled but conjunctions are no longer split.
pub fn contextualize(f: &Formula) -> Vec<ContextualizedFormula> {
    let mut out = Vec::new();
    split(&f.expand_sugar(), &mut Vec::new(), true, &mut out);
    out
}

fn split(f: &Formula, ctx: &mut Vec<Frame>, positive: bool, out: &mut Vec<ContextualizedFormula>) {
    match f {
        Formula::And(xs) if positive => xs.iter().for_each(|x| split(x, ctx, positive, out)),
        Formula::Not(inner) if positive && matches!(**inner, Formula::Modal(..)) => split(inner, ctx, false, out),
        Formula::Modal(m, a, t, body) => {
            ctx.push(Frame {
                modal: *m,
                agent: a.clone(),
                moment: t.clone(),
            });
            split(body, ctx, positive, out);
            ctx.pop();
        }
        other => out.push(ContextualizedFormula {
            body: opaque_modals(other),
            context: ctx.clone(),
            positive,
        }),
    }
}

fn opaque_modals(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bottom | Formula::Atom(..) => f.clone(),
        Formula::Modal(..) => opaque(f),
        Formula::Not(a) => not(opaque_modals(a)),
        Formula::And(xs) => Formula::And(xs.iter().map(opaque_modals).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(opaque_modals).collect()),
        Formula::Xor(xs) => Formula::Xor(xs.iter().map(opaque_modals).collect()),
        Formula::Implies(a, b) => Formula::Implies(Box::new(opaque_modals(a)), Box::new(opaque_modals(b))),
        Formula::Iff(a, b) => Formula::Iff(Box::new(opaque_modals(a)), Box::new(opaque_modals(b))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(opaque_modals(b))),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(opaque_modals(b))),
    }
}

/// Like [`contextualize`], but pieces keep nested modal formulas in their
/// bodies instead of making them opaque; only the outermost frame is
/// stripped. Used to build agent views, where inner modals stay real atoms.
pub fn split_frames(f: &Formula) -> Vec<(Option<Frame>, Formula, bool)> {
    fn go(f: &Formula, out: &mut Vec<(Option<Frame>, Formula, bool)>) {
        match f {
            Formula::And(xs) => xs.iter().for_each(|x| go(x, out)),
            Formula::Modal(m, a, t, body) => out.push((
                Some(Frame {
                    modal: *m,
                    agent: a.clone(),
                    moment: t.clone(),
                }),
                (**body).clone(),
                true,
            )),
            Formula::Not(inner) => match &**inner {
                Formula::Modal(m, a, t, body) => out.push((
                    Some(Frame {
                        modal: *m,
                        agent: a.clone(),
                        moment: t.clone(),
                    }),
                    (**body).clone(),
                    false,
                )),
                _ => out.push((None, f.clone(), true)),
            },
            other => out.push((None, other.clone(), true)),
        }
    }
    let mut out = Vec::new();
    go(&f.expand_sugar(), &mut out);
    out
}
