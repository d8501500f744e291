//! Ground formulas to clauses. Atoms are ground predicate applications or
//! whole modal formulas, which the propositional layer treats as opaque.

use std::collections::{BTreeSet, HashMap};

use crate::formula::{not, Formula, Modal, Term};
use crate::moments::MomentOrder;

/// Positive literal `+(id+1)`, negative `-(id+1)`.
pub type Lit = i32;

pub fn var_of(l: Lit) -> usize {
    (l.unsigned_abs() - 1) as usize
}

#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    atoms: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl AtomTable {
    pub fn intern(&mut self, atom: Formula) -> usize {
        if let Some(&i) = self.index.get(&atom) {
            return i;
        }
        self.atoms.push(atom.clone());
        self.index.insert(atom, self.atoms.len() - 1);
        self.atoms.len() - 1
    }

    pub fn get(&self, id: usize) -> &Formula {
        &self.atoms[id]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Rank of each atom in the total order on formulas; branching follows
    /// this order so that search does not depend on premise order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.atoms.len()).collect();
        ids.sort_by(|&a, &b| self.atoms[a].cmp(&self.atoms[b]));
        let mut rank = vec![0; ids.len()];
        for (r, id) in ids.into_iter().enumerate() {
            rank[id] = r;
        }
        rank
    }

    pub fn literal_formula(&self, l: Lit) -> Formula {
        let a = self.get(var_of(l)).clone();
        if l > 0 {
            a
        } else {
            not(a)
        }
    }

    /// A clause as a formula: `⊥`, a single literal, or a disjunction with
    /// literals ordered by atom and then sign.
    pub fn clause_formula(&self, clause: &[Lit]) -> Formula {
        let mut ls = clause.to_vec();
        ls.sort_by(|a, b| self.get(var_of(*a)).cmp(self.get(var_of(*b))).then((*a < 0).cmp(&(*b < 0))));
        match ls.as_slice() {
            [] => Formula::Bottom,
            [l] => self.literal_formula(*l),
            ls => Formula::Or(ls.iter().map(|l| self.literal_formula(*l)).collect()),
        }
    }
}

/// Canonical key for an atomic or modal subformula.
pub fn atom_key(f: &Formula) -> Formula {
    f.canonical()
}

/// Evaluates builtin interpreted atoms (`prior` over ground moments).
pub fn interpreted(f: &Formula, order: &MomentOrder) -> Option<bool> {
    match f {
        Formula::Atom(p, args) if p == "prior" && args.len() == 2 && args.iter().all(Term::is_ground) => {
            Some(order.holds(&args[0], &args[1]))
        }
        _ => None,
    }
}

/// Negation normal form over literals; `→`, `↔`, `⊕` and `W` are eliminated.
#[derive(Clone, Debug)]
enum Nnf {
    True,
    False,
    Lit(Lit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("clause form exceeds {0} clauses")]
pub struct TooLarge(pub usize);

pub const MAX_CLAUSES: usize = 100_000;

pub struct Clausifier<'a> {
    pub atoms: &'a mut AtomTable,
    pub order: &'a MomentOrder,
}

impl Clausifier<'_> {
    /// Clauses of a ground formula, each sorted and free of duplicates and
    /// tautologies. `[[]]` means the formula is unsatisfiable by itself.
    pub fn clauses(&mut self, f: &Formula) -> Result<Vec<Vec<Lit>>, TooLarge> {
        let n = self.nnf(f, true);
        let mut out = cnf(&n)?;
        for c in &mut out {
            c.sort_by_key(|l| (var_of(*l), *l < 0));
            c.dedup();
        }
        out.retain(|c| !c.windows(2).any(|w| var_of(w[0]) == var_of(w[1])));
        let mut seen = BTreeSet::new();
        out.retain(|c| seen.insert(c.clone()));
        Ok(out)
    }

    fn lit(&mut self, f: &Formula, positive: bool) -> Nnf {
        if let Some(v) = interpreted(f, self.order) {
            return if v == positive { Nnf::True } else { Nnf::False };
        }
        let id = self.atoms.intern(atom_key(f)) as i32 + 1;
        Nnf::Lit(if positive { id } else { -id })
    }

    fn nnf(&mut self, f: &Formula, positive: bool) -> Nnf {
        match f {
            Formula::Top => bool_nnf(positive),
            Formula::Bottom => bool_nnf(!positive),
            Formula::Atom(..) => self.lit(f, positive),
            Formula::Modal(Modal::Withholds, ..) => self.nnf(&f.expand_sugar(), positive),
            Formula::Modal(..) => self.lit(f, positive),
            Formula::Not(a) => self.nnf(a, !positive),
            Formula::And(xs) | Formula::Or(xs) => {
                let parts = xs.iter().map(|x| self.nnf(x, positive)).collect();
                if matches!(f, Formula::And(_)) == positive {
                    simplify_and(parts)
                } else {
                    simplify_or(parts)
                }
            }
            Formula::Implies(a, b) => {
                let (na, pb) = (self.nnf(a, !positive), self.nnf(b, positive));
                if positive {
                    simplify_or(vec![na, pb])
                } else {
                    simplify_and(vec![na, pb])
                }
            }
            Formula::Iff(a, b) => {
                // a ↔ b  ≡ (¬a ∨ b) ∧ (a ∨ ¬b);  ¬(a ↔ b) ≡ (a ∨ b) ∧ (¬a ∨ ¬b)
                let (pa, na) = (self.nnf(a, true), self.nnf(a, false));
                let (pb, nb) = (self.nnf(b, true), self.nnf(b, false));
                if positive {
                    simplify_and(vec![simplify_or(vec![na, pb.clone()]), simplify_or(vec![pa, nb])])
                } else {
                    simplify_and(vec![simplify_or(vec![pa, pb]), simplify_or(vec![na, nb])])
                }
            }
            Formula::Xor(_) => self.nnf(&f.expand_sugar(), positive),
            Formula::Forall(..) | Formula::Exists(..) => {
                panic!("clausify expects a ground formula; quantifiers must be expanded first")
            }
        }
    }
}

fn bool_nnf(b: bool) -> Nnf {
    if b {
        Nnf::True
    } else {
        Nnf::False
    }
}

fn simplify_and(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::True => {}
            Nnf::False => return Nnf::False,
            Nnf::And(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::True,
        1 => out.pop().unwrap(),
        _ => Nnf::And(out),
    }
}

fn simplify_or(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::False => {}
            Nnf::True => return Nnf::True,
            Nnf::Or(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::False,
        1 => out.pop().unwrap(),
        _ => Nnf::Or(out),
    }
}

fn cnf(n: &Nnf) -> Result<Vec<Vec<Lit>>, TooLarge> {
    Ok(match n {
        Nnf::True => vec![],
        Nnf::False => vec![vec![]],
        Nnf::Lit(l) => vec![vec![*l]],
        Nnf::And(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(cnf(x)?);
                if out.len() > MAX_CLAUSES {
                    return Err(TooLarge(MAX_CLAUSES));
                }
            }
            out
        }
        Nnf::Or(xs) => {
            let mut acc: Vec<Vec<Lit>> = vec![vec![]];
            for x in xs {
                let part = cnf(x)?;
                if acc.len().saturating_mul(part.len()) > MAX_CLAUSES {
                    return Err(TooLarge(MAX_CLAUSES));
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for p in &part {
                        let mut c = a.clone();
                        c.extend_from_slice(p);
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
    })
}
