//! Finite Herbrand universes and quantifier grounding.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{Formula, Term};
use crate::sort::{Signature, Sort};

/// Returned when function symbols generate an unbounded set of ground terms.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the Herbrand universe is not finite (function `{0}` nests)")]
pub struct NotFinite(pub String);

const MAX_ROUNDS: usize = 6;
const MAX_TERMS: usize = 50_000;

/// Ground terms per declared sort. A term of sort `s` also belongs to every
/// supersort of `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    by_sort: BTreeMap<Sort, Vec<Term>>,
}

impl Universe {
    /// Constants, integer literals mentioned in `formulas`, and every
    /// well-sorted application of a non-Boolean function symbol.
    pub fn new<'f>(sig: &Signature, formulas: impl IntoIterator<Item = &'f Formula>) -> Result<Self, NotFinite> {
        let mut typed: BTreeSet<(Sort, Term)> = sig
            .consts()
            .map(|(c, s)| (s.clone(), Term::Const(c.clone())))
            .collect();
        let mut ints = BTreeSet::new();
        for f in formulas {
            collect_ints(f, &mut ints);
        }
        for i in ints {
            typed.insert((Sort::moment(), Term::Int(i)));
        }
        let funcs: Vec<_> = sig
            .funcs()
            .filter(|(_, fs)| !fs.args.is_empty() && fs.result != Sort::boolean())
            .collect();
        let members = |typed: &BTreeSet<(Sort, Term)>, s: &Sort| -> Vec<Term> {
            typed
                .iter()
                .filter(|(ts, t)| sig.is_subsort(ts, s) || (matches!(t, Term::Int(_)) && *s == Sort::numeric()))
                .map(|(_, t)| t.clone())
                .collect()
        };
        for round in 0..=MAX_ROUNDS {
            let mut added = Vec::new();
            for (name, fs) in &funcs {
                let choices: Vec<Vec<Term>> = fs.args.iter().map(|s| members(&typed, s)).collect();
                for args in cartesian(&choices) {
                    let t = Term::App((*name).clone(), args);
                    let entry = (fs.result.clone(), t);
                    if !typed.contains(&entry) {
                        added.push(entry);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            if round == MAX_ROUNDS || typed.len() + added.len() > MAX_TERMS {
                let name = match &added[0].1 {
                    Term::App(n, _) => n.clone(),
                    other => other.to_string(),
                };
                return Err(NotFinite(name));
            }
            typed.extend(added);
        }
        let by_sort = sig.sorts().map(|s| (s.clone(), members(&typed, s))).collect();
        Ok(Universe { by_sort })
    }

    pub fn terms(&self, s: &Sort) -> &[Term] {
        self.by_sort.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Replaces quantifiers by finite conjunctions and disjunctions over the
    /// universe. The result has no free variables if the input had none.
    pub fn ground(&self, f: &Formula) -> Formula {
        match f {
            Formula::Top | Formula::Bottom | Formula::Atom(..) => f.clone(),
            Formula::Not(a) => Formula::Not(Box::new(self.ground(a))),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| self.ground(x)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| self.ground(x)).collect()),
            Formula::Xor(xs) => Formula::Xor(xs.iter().map(|x| self.ground(x)).collect()),
            Formula::Implies(a, b) => Formula::Implies(Box::new(self.ground(a)), Box::new(self.ground(b))),
            Formula::Iff(a, b) => Formula::Iff(Box::new(self.ground(a)), Box::new(self.ground(b))),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let instances: Vec<Formula> = self
                    .terms(&v.sort)
                    .iter()
                    .map(|t| self.ground(&body.subst_unchecked(v, t)))
                    .collect();
                if matches!(f, Formula::Forall(..)) {
                    Formula::And(instances)
                } else {
                    Formula::Or(instances)
                }
            }
            Formula::Modal(m, a, t, body) => Formula::Modal(*m, a.clone(), t.clone(), Box::new(self.ground(body))),
        }
    }
}

fn collect_ints(f: &Formula, out: &mut BTreeSet<i64>) {
    fn term(t: &Term, out: &mut BTreeSet<i64>) {
        match t {
            Term::Int(i) => {
                out.insert(*i);
            }
            Term::App(_, args) => args.iter().for_each(|a| term(a, out)),
            _ => {}
        }
    }
    f.walk(&mut |g| match g {
        Formula::Atom(_, args) => args.iter().for_each(|a| term(a, out)),
        Formula::Modal(_, a, t, _) => {
            term(a, out);
            term(t, out);
        }
        _ => {}
    });
}

/// All tuples picking one element from each choice list, in lexicographic order.
pub fn cartesian(choices: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}
