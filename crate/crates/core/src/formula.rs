//! Terms and formulas of the belief calculus, plus the structural operations
//! every other module builds on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::LogicError;
use crate::sort::{Signature, Sort};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Var {
            name: name.into(),
            sort,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Const(String),
    /// Integer literal; usable wherever a `Moment` or `Numeric` is expected.
    Int(i64),
    App(String, Vec<Term>),
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) | Term::Int(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Term::Const(_) | Term::Int(_) => {}
        }
    }

    fn mentions_var_named(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v.name == name,
            Term::App(_, args) => args.iter().any(|a| a.mentions_var_named(name)),
            _ => false,
        }
    }

    fn subst(&self, var: &Var, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(var, by)).collect()),
            other => other.clone(),
        }
    }

    fn rename(&self, map: &BTreeMap<String, Var>) -> Term {
        match self {
            Term::Var(v) => map.get(&v.name).cloned().map(Term::Var).unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename(map)).collect()),
            other => other.clone(),
        }
    }

    fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_) => {}
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Int(i) => {
                out.insert(i.to_string());
            }
            Term::App(f, args) => {
                out.insert(f.clone());
                args.iter().for_each(|a| a.symbols(out));
            }
        }
    }

    /// Sort of the term; integer literals report `Numeric`.
    pub fn sort(&self, sig: &Signature) -> Result<Sort, LogicError> {
        match self {
            Term::Var(v) => Ok(v.sort.clone()),
            Term::Const(c) => sig
                .const_sort(c)
                .cloned()
                .ok_or_else(|| LogicError::UnknownSymbol(c.clone())),
            Term::Int(_) => Ok(Sort::numeric()),
            Term::App(f, _) => sig
                .func(f)
                .map(|s| s.result.clone())
                .ok_or_else(|| LogicError::UnknownSymbol(f.clone())),
        }
    }

    /// Checks arities and argument sorts, and that the term fits `expected`.
    pub fn check(&self, expected: &Sort, sig: &Signature) -> Result<(), LogicError> {
        if let Term::App(f, args) = self {
            let fs = sig.func(f).ok_or_else(|| LogicError::UnknownSymbol(f.clone()))?;
            if fs.args.len() != args.len() {
                return Err(LogicError::Arity {
                    symbol: f.clone(),
                    expected: fs.args.len(),
                    found: args.len(),
                });
            }
            for (a, s) in args.iter().zip(&fs.args) {
                a.check(s, sig)?;
            }
        }
        if self.fits(expected, sig)? {
            Ok(())
        } else {
            Err(LogicError::SortMismatch {
                expected: expected.to_string(),
                found: self.sort(sig)?.to_string(),
                context: self.to_string(),
            })
        }
    }

    pub fn fits(&self, expected: &Sort, sig: &Signature) -> Result<bool, LogicError> {
        if let Term::Int(_) = self {
            return Ok(sig.is_subsort(expected, &Sort::moment())
                || sig.is_subsort(expected, &Sort::numeric())
                || *expected == Sort::moment()
                || *expected == Sort::numeric());
        }
        Ok(sig.is_subsort(&self.sort(sig)?, expected))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&v.name),
            Term::Const(c) => f.write_str(c),
            Term::Int(i) => write!(f, "{i}"),
            Term::App(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Modal {
    Perceives,
    Believes,
    Withholds,
}

impl Modal {
    pub fn keyword(self) -> &'static str {
        match self {
            Modal::Perceives => "perceives",
            Modal::Believes => "believes",
            Modal::Withholds => "withholds",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Formula {
    Top,
    Bottom,
    /// Boolean-sorted application `p(t₁,…,tₙ)`; a nullary atom is a propositional constant.
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Exclusive disjunction: exactly one disjunct holds.
    Xor(Vec<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    Modal(Modal, Term, Term, Box<Formula>),
}

pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
    Formula::Atom(pred.to_string(), args)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn believes(agent: Term, moment: Term, f: Formula) -> Formula {
    Formula::Modal(Modal::Believes, agent, moment, Box::new(f))
}

pub fn perceives(agent: Term, moment: Term, f: Formula) -> Formula {
    Formula::Modal(Modal::Perceives, agent, moment, Box::new(f))
}

pub fn withholds(agent: Term, moment: Term, f: Formula) -> Formula {
    Formula::Modal(Modal::Withholds, agent, moment, Box::new(f))
}

impl Formula {
    pub fn negate(&self) -> Formula {
        not(self.clone())
    }

    /// Negation that strips an outer `¬` instead of stacking a second one.
    pub fn complement(&self) -> Formula {
        match self {
            Formula::Not(inner) => (**inner).clone(),
            other => other.negate(),
        }
    }

    pub fn is_modal_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(..) => true,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.is_modal_free(),
            Formula::And(xs) | Formula::Or(xs) | Formula::Xor(xs) => xs.iter().all(Formula::is_modal_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.is_modal_free() && b.is_modal_free(),
            Formula::Modal(..) => false,
        }
    }

    /// Variables with at least one occurrence not bound by an enclosing quantifier.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let add_term = |t: &Term, bound: &Vec<Var>, out: &mut BTreeSet<Var>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.iter().any(|b| b.name == v.name)));
        };
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(_, args) => args.iter().for_each(|a| add_term(a, bound, out)),
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(xs) | Formula::Or(xs) | Formula::Xor(xs) => {
                xs.iter().for_each(|x| x.collect_free(bound, out))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::Modal(_, a, t, body) => {
                add_term(a, bound, out);
                add_term(t, bound, out);
                body.collect_free(bound, out);
            }
        }
    }

    /// Binder variables in pre-order; used to check that substitution leaves
    /// the binder multiset untouched.
    pub fn binders(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Forall(v, _) | Formula::Exists(v, _) = f {
                out.push(v.clone());
            }
        });
        out
    }

    /// Pre-order traversal over subformulas.
    pub fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(..) => {}
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Modal(_, _, _, a) => {
                a.walk(visit)
            }
            Formula::And(xs) | Formula::Or(xs) | Formula::Xor(xs) => xs.iter().for_each(|x| x.walk(visit)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    /// Capture-avoiding substitution of `by` for the free occurrences of `var`.
    pub fn substitute(&self, var: &Var, by: &Term, sig: &Signature) -> Result<Formula, LogicError> {
        if !by.fits(&var.sort, sig)? {
            return Err(LogicError::SortMismatch {
                expected: var.sort.to_string(),
                found: by.sort(sig)?.to_string(),
                context: format!("substitution of {by} for {}", var.name),
            });
        }
        Ok(self.subst_unchecked(var, by))
    }

    /// Substitution without the sort check; callers guarantee `sort(by) ⊑ sort(var)`.
    pub fn subst_unchecked(&self, var: &Var, by: &Term) -> Formula {
        match self {
            Formula::Top | Formula::Bottom => self.clone(),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.subst(var, by)).collect()),
            Formula::Not(a) => not(a.subst_unchecked(var, by)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.subst_unchecked(var, by)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.subst_unchecked(var, by)).collect()),
            Formula::Xor(xs) => Formula::Xor(xs.iter().map(|x| x.subst_unchecked(var, by)).collect()),
            Formula::Implies(a, b) => Formula::Implies(
                Box::new(a.subst_unchecked(var, by)),
                Box::new(b.subst_unchecked(var, by)),
            ),
            Formula::Iff(a, b) => Formula::Iff(
                Box::new(a.subst_unchecked(var, by)),
                Box::new(b.subst_unchecked(var, by)),
            ),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let rebuild = |v: Var, b: Formula| match self {
                    Formula::Forall(..) => Formula::Forall(v, Box::new(b)),
                    _ => Formula::Exists(v, Box::new(b)),
                };
                if v.name == var.name {
                    return self.clone();
                }
                if by.mentions_var_named(&v.name) && body.free_vars().iter().any(|f| f.name == var.name) {
                    let fresh = fresh_name(&v.name, |n| by.mentions_var_named(n) || body.mentions_name(n));
                    let renamed = Var::new(fresh, v.sort.clone());
                    let body = body.subst_unchecked(v, &Term::Var(renamed.clone()));
                    return rebuild(renamed, body.subst_unchecked(var, by));
                }
                rebuild(v.clone(), body.subst_unchecked(var, by))
            }
            Formula::Modal(m, a, t, body) => Formula::Modal(
                *m,
                a.subst(var, by),
                t.subst(var, by),
                Box::new(body.subst_unchecked(var, by)),
            ),
        }
    }

    fn mentions_name(&self, name: &str) -> bool {
        let mut found = false;
        self.walk(&mut |f| match f {
            Formula::Atom(_, args) => found |= args.iter().any(|a| a.mentions_var_named(name)),
            Formula::Forall(v, _) | Formula::Exists(v, _) => found |= v.name == name,
            Formula::Modal(_, a, t, _) => found |= a.mentions_var_named(name) || t.mentions_var_named(name),
            _ => {}
        });
        found
    }

    /// Replaces `W` and `⊕` by their definitions. Idempotent.
    pub fn expand_sugar(&self) -> Formula {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(..) => self.clone(),
            Formula::Not(a) => not(a.expand_sugar()),
            Formula::And(xs) => Formula::And(xs.iter().map(Formula::expand_sugar).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(Formula::expand_sugar).collect()),
            Formula::Xor(xs) => {
                let xs: Vec<Formula> = xs.iter().map(Formula::expand_sugar).collect();
                match xs.len() {
                    0 => Formula::Bottom,
                    1 => xs.into_iter().next().unwrap(),
                    _ => {
                        let mut conj = vec![Formula::Or(xs.clone())];
                        for i in 0..xs.len() {
                            for j in i + 1..xs.len() {
                                conj.push(not(Formula::And(vec![xs[i].clone(), xs[j].clone()])));
                            }
                        }
                        Formula::And(conj)
                    }
                }
            }
            Formula::Implies(a, b) => Formula::Implies(Box::new(a.expand_sugar()), Box::new(b.expand_sugar())),
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.expand_sugar()), Box::new(b.expand_sugar())),
            Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(b.expand_sugar())),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(b.expand_sugar())),
            Formula::Modal(Modal::Withholds, a, t, body) => {
                let body = body.expand_sugar();
                Formula::And(vec![
                    not(believes(a.clone(), t.clone(), body.clone())),
                    not(believes(a.clone(), t.clone(), not(body))),
                ])
            }
            Formula::Modal(m, a, t, body) => Formula::Modal(*m, a.clone(), t.clone(), Box::new(body.expand_sugar())),
        }
    }

    pub fn has_sugar(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| {
            found |= matches!(f, Formula::Xor(_) | Formula::Modal(Modal::Withholds, ..));
        });
        found
    }

    /// Renames every bound variable to `_k`, where `k` is its binding depth.
    pub fn alpha_normalize(&self) -> Formula {
        self.alpha_at(0, &BTreeMap::new())
    }

    fn alpha_at(&self, depth: usize, map: &BTreeMap<String, Var>) -> Formula {
        match self {
            Formula::Top | Formula::Bottom => self.clone(),
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.rename(map)).collect()),
            Formula::Not(a) => not(a.alpha_at(depth, map)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.alpha_at(depth, map)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.alpha_at(depth, map)).collect()),
            Formula::Xor(xs) => Formula::Xor(xs.iter().map(|x| x.alpha_at(depth, map)).collect()),
            Formula::Implies(a, b) => {
                Formula::Implies(Box::new(a.alpha_at(depth, map)), Box::new(b.alpha_at(depth, map)))
            }
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.alpha_at(depth, map)), Box::new(b.alpha_at(depth, map))),
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let nv = Var::new(format!("_{depth}"), v.sort.clone());
                let mut inner = map.clone();
                inner.insert(v.name.clone(), nv.clone());
                let body = Box::new(b.alpha_at(depth + 1, &inner));
                match self {
                    Formula::Forall(..) => Formula::Forall(nv, body),
                    _ => Formula::Exists(nv, body),
                }
            }
            Formula::Modal(m, a, t, body) => {
                Formula::Modal(*m, a.rename(map), t.rename(map), Box::new(body.alpha_at(depth, map)))
            }
        }
    }

    /// Canonical representative used for set membership: sugar expanded and
    /// bound variables renamed.
    pub fn canonical(&self) -> Formula {
        self.expand_sugar().alpha_normalize()
    }

    /// Structural equality after sugar expansion and alpha normalization.
    pub fn equivalent_form(&self, other: &Formula) -> bool {
        self.canonical() == other.canonical()
    }

    /// Distinct non-logical symbols: predicates, functions, constants, literals
    /// and modal operators. Connectives, quantifiers and variables do not count.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(p, args) => {
                out.insert(p.clone());
                args.iter().for_each(|a| a.symbols(&mut out));
            }
            Formula::Modal(m, a, t, _) => {
                out.insert(m.keyword().to_string());
                a.symbols(&mut out);
                t.symbols(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Checks sorts against `sig`: predicates return `Boolean`, modal
    /// arguments are an `Agent` and a `Moment`.
    pub fn check(&self, sig: &Signature) -> Result<(), LogicError> {
        match self {
            Formula::Top | Formula::Bottom => Ok(()),
            Formula::Atom(p, args) => {
                if args.is_empty() {
                    if let Some(s) = sig.const_sort(p) {
                        return if sig.is_subsort(s, &Sort::boolean()) {
                            Ok(())
                        } else {
                            Err(LogicError::SortMismatch {
                                expected: "Boolean".into(),
                                found: s.to_string(),
                                context: p.clone(),
                            })
                        };
                    }
                }
                Term::App(p.clone(), args.clone()).check(&Sort::boolean(), sig)
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.check(sig),
            Formula::And(xs) | Formula::Or(xs) | Formula::Xor(xs) => xs.iter().try_for_each(|x| x.check(sig)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
            Formula::Modal(_, a, t, body) => {
                a.check(&Sort::agent(), sig)?;
                t.check(&Sort::moment(), sig)?;
                body.check(sig)
            }
        }
    }

    /// `true` iff every application respects the signature. Unknown symbols
    /// are an error, not `false`.
    pub fn well_sorted(&self, sig: &Signature) -> Result<bool, LogicError> {
        match self.check(sig) {
            Ok(()) => Ok(true),
            Err(LogicError::SortMismatch { .. }) | Err(LogicError::Arity { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !taken(n))
        .expect("unbounded name supply")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn sig() -> Signature {
        let mut s = Signature::core();
        s.declare_sort(Sort::new("Ticket"), None).unwrap();
        for t in ["t1", "t2"] {
            s.declare_const(t, Sort::new("Ticket")).unwrap();
        }
        s.declare_func(
            "win",
            crate::sort::FunctionSig {
                args: vec![Sort::new("Ticket")],
                result: Sort::boolean(),
            },
        )
        .unwrap();
        s.declare_const("a", Sort::agent()).unwrap();
        s.declare_const("now", Sort::moment()).unwrap();
        s.declare_const("raining", Sort::fluent()).unwrap();
        s
    }

    fn x() -> Var {
        Var::new("x", Sort::new("Ticket"))
    }

    #[test]
    fn free_vars_cases() {
        assert!(Formula::Bottom.free_vars().is_empty());
        let t = Var::new("t", Sort::new("Ticket"));
        let ex = Formula::Exists(t.clone(), Box::new(atom("win", vec![Term::Var(t)])));
        assert!(ex.free_vars().is_empty());
        let tm = Var::new("t", Sort::moment());
        let h = atom("holds", vec![c("raining"), Term::Var(tm.clone())]);
        assert_eq!(h.free_vars(), BTreeSet::from([tm]));
    }

    #[test]
    fn substitute_cases() {
        let s = sig();
        let w = atom("win", vec![Term::Var(x())]);
        assert_eq!(w.substitute(&x(), &c("t1"), &s).unwrap(), atom("win", vec![c("t1")]));
        let ex = Formula::Exists(x(), Box::new(w.clone()));
        assert_eq!(ex.substitute(&x(), &c("t1"), &s).unwrap(), ex);
        let b = believes(c("a"), c("now"), w);
        assert_eq!(
            b.substitute(&x(), &c("t2"), &s).unwrap(),
            believes(c("a"), c("now"), atom("win", vec![c("t2")]))
        );
        assert!(matches!(
            b.substitute(&x(), &c("now"), &s),
            Err(LogicError::SortMismatch { .. })
        ));
    }

    #[test]
    fn substitution_avoids_capture() {
        let s = sig();
        let y = Var::new("y", Sort::new("Ticket"));
        // ∃y. win(x) ∧ win(y), substitute x := y
        let f = Formula::Exists(
            y.clone(),
            Box::new(Formula::And(vec![
                atom("win", vec![Term::Var(x())]),
                atom("win", vec![Term::Var(y.clone())]),
            ])),
        );
        let g = f.substitute(&x(), &Term::Var(y.clone()), &s).unwrap();
        assert_eq!(g.free_vars(), BTreeSet::from([y]));
        assert_eq!(g.binders().len(), 1);
    }

    #[test]
    fn expand_withholding_and_xor() {
        let phi = atom("win", vec![c("t1")]);
        let w = withholds(c("a"), c("now"), phi.clone());
        assert_eq!(
            w.expand_sugar(),
            Formula::And(vec![
                not(believes(c("a"), c("now"), phi.clone())),
                not(believes(c("a"), c("now"), not(phi.clone()))),
            ])
        );
        let psi = atom("win", vec![c("t2")]);
        let xo = Formula::Xor(vec![phi.clone(), psi.clone()]);
        assert_eq!(
            xo.expand_sugar(),
            Formula::And(vec![
                Formula::Or(vec![phi.clone(), psi.clone()]),
                not(Formula::And(vec![phi.clone(), psi])),
            ])
        );
        assert_eq!(phi.expand_sugar(), phi);
        assert_eq!(w.expand_sugar().expand_sugar(), w.expand_sugar());
        assert!(!w.expand_sugar().has_sugar());
    }

    #[test]
    fn well_sorted_cases() {
        let s = sig();
        let tm = Var::new("t1", Sort::moment());
        let ok = atom("holds", vec![c("raining"), Term::Var(tm.clone())]);
        assert!(ok.well_sorted(&s).unwrap());
        let swapped = atom("holds", vec![Term::Var(tm), c("raining")]);
        assert!(!swapped.well_sorted(&s).unwrap());
        let unknown = atom("flies", vec![c("a")]);
        assert_eq!(unknown.well_sorted(&s), Err(LogicError::UnknownSymbol("flies".into())));
        let bad_modal = believes(c("now"), c("now"), Formula::Top);
        assert!(!bad_modal.well_sorted(&s).unwrap());
    }

    #[test]
    fn symbols_skip_connectives_and_vars() {
        let t = Var::new("t", Sort::new("Ticket"));
        let f = believes(
            c("a"),
            c("now"),
            not(Formula::Exists(t.clone(), Box::new(atom("win", vec![Term::Var(t)])))),
        );
        let syms: Vec<_> = f.symbols().into_iter().collect();
        assert_eq!(syms, vec!["a", "believes", "now", "win"]);
        assert_eq!(atom("p", vec![]).symbols().len(), 1);
    }
}
