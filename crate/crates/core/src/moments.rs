//! The strict order on moments: transitive closure of declared `prior` facts
//! plus numeric order on integer literals.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ReasonError;
use crate::formula::Term;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MomentOrder {
    moments: BTreeSet<Term>,
    /// `(a, b)` means `a` is strictly before `b`.
    relation: BTreeSet<(Term, Term)>,
}

impl MomentOrder {
    /// Builds the closure. Returns the first moment found on a cycle as the
    /// error value, since a cyclic `prior` relation cannot be irreflexive.
    pub fn new(
        moments: impl IntoIterator<Item = Term>,
        prior: impl IntoIterator<Item = (Term, Term)>,
    ) -> Result<Self, Term> {
        let mut moments: BTreeSet<Term> = moments.into_iter().collect();
        let prior: Vec<(Term, Term)> = prior.into_iter().collect();
        for (a, b) in &prior {
            moments.insert(a.clone());
            moments.insert(b.clone());
        }
        let ints: Vec<i64> = moments
            .iter()
            .filter_map(|m| match m {
                Term::Int(i) => Some(*i),
                _ => None,
            })
            .collect();
        let mut succ: BTreeMap<Term, BTreeSet<Term>> = BTreeMap::new();
        for (a, b) in prior {
            succ.entry(a).or_default().insert(b);
        }
        for &i in &ints {
            for &j in &ints {
                if i < j {
                    succ.entry(Term::Int(i)).or_default().insert(Term::Int(j));
                }
            }
        }
        let mut relation = BTreeSet::new();
        for m in &moments {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&Term> = succ.get(m).map(|s| s.iter().collect()).unwrap_or_default();
            while let Some(n) = stack.pop() {
                if seen.insert(n.clone()) {
                    if let Some(next) = succ.get(n) {
                        stack.extend(next.iter());
                    }
                }
            }
            if seen.contains(m) {
                return Err(m.clone());
            }
            relation.extend(seen.into_iter().map(|n| (m.clone(), n)));
        }
        Ok(MomentOrder { moments, relation })
    }

    pub fn is_declared(&self, t: &Term) -> bool {
        matches!(t, Term::Int(_)) || self.moments.contains(t)
    }

    pub fn moments(&self) -> impl Iterator<Item = &Term> {
        self.moments.iter()
    }

    /// `t1 < t2`. Integer literals compare numerically even when undeclared.
    pub fn before(&self, t1: &Term, t2: &Term) -> Result<bool, ReasonError> {
        for t in [t1, t2] {
            if !self.is_declared(t) {
                return Err(ReasonError::UnknownMoment(t.to_string()));
            }
        }
        if let (Term::Int(a), Term::Int(b)) = (t1, t2) {
            return Ok(a < b);
        }
        Ok(self.relation.contains(&(t1.clone(), t2.clone())))
    }

    /// `t1 ≤ t2`: equal terms or strictly before.
    pub fn not_after(&self, t1: &Term, t2: &Term) -> bool {
        t1 == t2 || self.before(t1, t2).unwrap_or(false)
    }

    /// Evaluates a ground `prior` atom. Unknown moments are simply unordered.
    pub fn holds(&self, t1: &Term, t2: &Term) -> bool {
        self.before(t1, t2).unwrap_or(false)
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Term, Term)> {
        self.relation.iter()
    }
}
