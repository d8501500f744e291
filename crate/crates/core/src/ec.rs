//! Event-calculus background axioms.

use serde::Serialize;

use crate::formula::{atom, not, Formula, Term, Var};
use crate::ground::Universe;
use crate::moments::MomentOrder;
use crate::sort::Sort;

/// Which background theory accompanies a knowledge base.
///
/// `Minimal` only derives `clipped` from terminating events. `Inertial` adds
/// persistence of fluents through unclipped intervals, and closes `clipped`
/// under a closed-world reading (see [`closed_world_clipped`]).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EcFlavor {
    #[default]
    Minimal,
    Inertial,
}

fn v(name: &str, sort: Sort) -> (Var, Term) {
    let var = Var::new(name, sort);
    let t = Term::Var(var.clone());
    (var, t)
}

fn forall(vars: Vec<Var>, body: Formula) -> Formula {
    vars.into_iter()
        .rev()
        .fold(body, |b, var| Formula::Forall(var, Box::new(b)))
}

fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn ec_axioms(flavor: EcFlavor) -> Vec<Formula> {
    let (ev, e) = v("e", Sort::event());
    let (fv, f) = v("f", Sort::fluent());
    let (tv, t) = v("t", Sort::moment());
    let (t1v, t1) = v("t1", Sort::moment());
    let (t2v, t2) = v("t2", Sort::moment());
    match flavor {
        EcFlavor::Minimal => vec![forall(
            vec![ev, fv, tv, t1v, t2v],
            implies(
                Formula::And(vec![
                    atom("happens", vec![e.clone(), t.clone()]),
                    atom("terminates", vec![e, f.clone(), t.clone()]),
                    atom("prior", vec![t1.clone(), t.clone()]),
                    atom("prior", vec![t, t2.clone()]),
                ]),
                atom("clipped", vec![t1, f, t2]),
            ),
        )],
        EcFlavor::Inertial => vec![
            forall(
                vec![ev, fv.clone(), t1v.clone(), t2v.clone()],
                implies(
                    Formula::And(vec![
                        atom("happens", vec![e.clone(), t1.clone()]),
                        atom("initiates", vec![e, f.clone(), t1.clone()]),
                        atom("prior", vec![t1.clone(), t2.clone()]),
                        not(atom("clipped", vec![t1.clone(), f.clone(), t2.clone()])),
                    ]),
                    atom("holds", vec![f.clone(), t2.clone()]),
                ),
            ),
            forall(
                vec![fv, t1v, t2v],
                implies(
                    Formula::And(vec![
                        atom("holds", vec![f.clone(), t1.clone()]),
                        atom("prior", vec![t1.clone(), t2.clone()]),
                        not(atom("clipped", vec![t1.clone(), f.clone(), t2.clone()])),
                    ]),
                    atom("holds", vec![f, t2]),
                ),
            ),
        ],
    }
}

/// Ground `¬clipped(t1, f, t2)` for every ordered pair of declared moments
/// and every fluent, except where the `clipped` atom is mentioned by one of
/// `premises`.
pub fn closed_world_clipped<'a>(
    universe: &Universe,
    order: &MomentOrder,
    premises: impl IntoIterator<Item = &'a Formula>,
) -> Vec<Formula> {
    let mut mentioned = std::collections::BTreeSet::new();
    for p in premises {
        p.walk(&mut |g| {
            if let Formula::Atom(name, args) = g {
                if name == "clipped" && args.iter().all(Term::is_ground) {
                    mentioned.insert(args.clone());
                }
            }
        });
    }
    let mut out = Vec::new();
    for (a, b) in order.pairs() {
        for f in universe.terms(&Sort::fluent()) {
            let args = vec![a.clone(), f.clone(), b.clone()];
            if !mentioned.contains(&args) {
                out.push(not(atom("clipped", args)));
            }
        }
    }
    out
}
