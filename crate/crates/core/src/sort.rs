//! Sorts and the symbol signature.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::LogicError;

/// A sort name. Builtin sorts are listed in [`BUILTIN_SORTS`]; knowledge bases
/// may declare further sorts with an optional parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Sort(pub String);

impl Sort {
    pub fn new(name: impl Into<String>) -> Self {
        Sort(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn object() -> Self {
        Sort::new("Object")
    }
    pub fn agent() -> Self {
        Sort::new("Agent")
    }
    pub fn moment() -> Self {
        Sort::new("Moment")
    }
    pub fn boolean() -> Self {
        Sort::new("Boolean")
    }
    pub fn fluent() -> Self {
        Sort::new("Fluent")
    }
    pub fn event() -> Self {
        Sort::new("Event")
    }
    pub fn numeric() -> Self {
        Sort::new("Numeric")
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builtin sorts with their parent edge.
pub const BUILTIN_SORTS: &[(&str, Option<&str>)] = &[
    ("Object", None),
    ("Agent", None),
    ("Self", Some("Agent")),
    ("ActionType", None),
    ("Event", None),
    ("Action", Some("Event")),
    ("Moment", None),
    ("Boolean", None),
    ("Fluent", None),
    ("Numeric", None),
];

/// Builtin function symbols of the event-calculus core.
pub const CORE_FUNCTIONS: &[(&str, &[&str], &str)] = &[
    ("action", &["Agent", "ActionType"], "Action"),
    ("initially", &["Fluent"], "Boolean"),
    ("holds", &["Fluent", "Moment"], "Boolean"),
    ("happens", &["Event", "Moment"], "Boolean"),
    ("clipped", &["Moment", "Fluent", "Moment"], "Boolean"),
    ("initiates", &["Event", "Fluent", "Moment"], "Boolean"),
    ("terminates", &["Event", "Fluent", "Moment"], "Boolean"),
    ("prior", &["Moment", "Moment"], "Boolean"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionSig {
    pub args: Vec<Sort>,
    pub result: Sort,
}

/// Declared sorts, constants and function symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    sorts: BTreeMap<Sort, Option<Sort>>,
    consts: BTreeMap<String, Sort>,
    funcs: BTreeMap<String, FunctionSig>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::core()
    }
}

impl Signature {
    /// The builtin sorts and event-calculus functions, no constants.
    pub fn core() -> Self {
        let sorts = BUILTIN_SORTS
            .iter()
            .map(|(s, p)| (Sort::new(*s), p.map(Sort::new)))
            .collect();
        let funcs = CORE_FUNCTIONS
            .iter()
            .map(|(name, args, res)| {
                (
                    name.to_string(),
                    FunctionSig {
                        args: args.iter().map(|a| Sort::new(*a)).collect(),
                        result: Sort::new(*res),
                    },
                )
            })
            .collect();
        Signature {
            sorts,
            consts: BTreeMap::new(),
            funcs,
        }
    }

    pub fn has_sort(&self, s: &Sort) -> bool {
        self.sorts.contains_key(s)
    }

    pub fn parent(&self, s: &Sort) -> Option<&Sort> {
        self.sorts.get(s).and_then(|p| p.as_ref())
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.keys()
    }

    pub fn declare_sort(&mut self, s: Sort, parent: Option<Sort>) -> Result<(), LogicError> {
        if let Some(p) = &parent {
            if !self.has_sort(p) {
                return Err(LogicError::UnknownSort(p.0.clone()));
            }
        }
        match self.sorts.get(&s) {
            Some(existing) if *existing == parent => Ok(()),
            Some(_) => Err(LogicError::Redeclared(s.0)),
            None => {
                self.sorts.insert(s, parent);
                Ok(())
            }
        }
    }

    pub fn declare_const(&mut self, name: &str, sort: Sort) -> Result<(), LogicError> {
        if !self.has_sort(&sort) {
            return Err(LogicError::UnknownSort(sort.0));
        }
        if self.funcs.contains_key(name) {
            return Err(LogicError::Redeclared(name.to_string()));
        }
        match self.consts.get(name) {
            Some(s) if *s == sort => Ok(()),
            Some(_) => Err(LogicError::Redeclared(name.to_string())),
            None => {
                self.consts.insert(name.to_string(), sort);
                Ok(())
            }
        }
    }

    pub fn declare_func(&mut self, name: &str, sig: FunctionSig) -> Result<(), LogicError> {
        for s in sig.args.iter().chain(std::iter::once(&sig.result)) {
            if !self.has_sort(s) {
                return Err(LogicError::UnknownSort(s.0.clone()));
            }
        }
        if self.consts.contains_key(name) {
            return Err(LogicError::Redeclared(name.to_string()));
        }
        match self.funcs.get(name) {
            Some(existing) if *existing == sig => Ok(()),
            Some(_) => Err(LogicError::Redeclared(name.to_string())),
            None => {
                self.funcs.insert(name.to_string(), sig);
                Ok(())
            }
        }
    }

    pub fn const_sort(&self, name: &str) -> Option<&Sort> {
        self.consts.get(name)
    }

    pub fn func(&self, name: &str) -> Option<&FunctionSig> {
        self.funcs.get(name)
    }

    pub fn consts(&self) -> impl Iterator<Item = (&String, &Sort)> {
        self.consts.iter()
    }

    pub fn funcs(&self) -> impl Iterator<Item = (&String, &FunctionSig)> {
        self.funcs.iter()
    }

    /// `sub ⊑ sup` along declared parent edges.
    pub fn is_subsort(&self, sub: &Sort, sup: &Sort) -> bool {
        let mut cur = Some(sub);
        let mut steps = 0;
        while let Some(s) = cur {
            if s == sup {
                return true;
            }
            steps += 1;
            if steps > self.sorts.len() {
                return false;
            }
            cur = self.parent(s);
        }
        false
    }

    /// All declared sorts that are subsorts of `sup`, including itself.
    pub fn subsorts_of<'a>(&'a self, sup: &'a Sort) -> impl Iterator<Item = &'a Sort> + 'a {
        self.sorts.keys().filter(move |s| self.is_subsort(s, sup))
    }
}
