//! Proof objects produced by the prover and consumed by the checker.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::formula::Formula;

pub fn serialize_formula<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn serialize_formulas<S: Serializer>(fs: &[Formula], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(fs.iter().map(|f| f.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Rule {
    /// A member of the premise set.
    Premise,
    /// The negated goal, assumed for refutation.
    Hypothesis,
    /// The fact proved by `lemmas[k]`.
    Lemma(usize),
    /// One clause of the clause form of the input.
    Clausify,
    /// Binary resolution of two clauses.
    Resolve,
    /// From the empty clause, the goal.
    Conclude,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    /// Indices of earlier steps.
    pub inputs: Vec<usize>,
    #[serde(serialize_with = "serialize_formula")]
    pub output: Formula,
}

/// A belief fact `B(agent, t, ψ)` justified by a proof of `ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma {
    #[serde(serialize_with = "serialize_formula")]
    pub fact: Formula,
    pub proof: Proof,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Proof {
    #[serde(serialize_with = "serialize_formula")]
    pub goal: Formula,
    #[serde(serialize_with = "serialize_formulas")]
    pub premises_used: Vec<Formula>,
    pub steps: Vec<Step>,
    /// Branching depth of the refutation.
    pub depth: usize,
    pub lemmas: Vec<Lemma>,
}

impl Proof {
    /// Steps including those of lemma proofs, recursively.
    pub fn total_steps(&self) -> usize {
        self.steps.len() + self.lemmas.iter().map(|l| l.proof.total_steps()).sum::<usize>()
    }

    /// Distinct non-logical symbols across all step formulas.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        out.extend(self.goal.symbols());
        for s in &self.steps {
            out.extend(s.output.symbols());
        }
        for l in &self.lemmas {
            l.proof.collect_symbols(out);
        }
    }

    /// Proof cost: step count with symbol count as a tie-breaker in the
    /// thousandths.
    pub fn cost<S: crate::scalar::Scalar>(&self) -> S {
        let n = num_bigint::BigInt::from(self.total_steps() * 1000 + self.symbols().len());
        S::from_rational(&num_rational::BigRational::new(n, 1000.into()))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Premise => f.write_str("premise"),
            Rule::Hypothesis => f.write_str("hypothesis"),
            Rule::Lemma(k) => write!(f, "lemma:{k}"),
            Rule::Clausify => f.write_str("clausify"),
            Rule::Resolve => f.write_str("resolve"),
            Rule::Conclude => f.write_str("conclude"),
        }
    }
}

impl Proof {
    /// Line-oriented trace: one line per step with index, rule, inputs and
    /// formula. Lemma proofs follow, each under a `lemma k:` header and
    /// indented.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        self.write_trace(&mut out, 0);
        out
    }

    fn write_trace(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        out.push_str(&format!("{pad}goal {}\n", self.goal));
        for (i, s) in self.steps.iter().enumerate() {
            let inputs: Vec<String> = s.inputs.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{pad}{i} {} [{}] {}\n", s.rule, inputs.join(","), s.output));
        }
        for (k, l) in self.lemmas.iter().enumerate() {
            out.push_str(&format!("{pad}lemma {k}: {}\n", l.fact));
            l.proof.write_trace(out, indent + 1);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    /// Search finished and found a countermodel in both directions.
    NotEntailed,
    /// The depth budget or the clause-size guard stopped the search.
    Budget,
    /// The Herbrand universe is infinite.
    NotFinite,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::NotEntailed => "not entailed",
            UnknownReason::Budget => "search budget exhausted",
            UnknownReason::NotFinite => "Herbrand universe is not finite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ProofResult {
    Proved { proof: Proof },
    /// The negation of the goal was proved instead.
    Refuted { proof: Proof },
    Unknown { reason: UnknownReason },
}

impl ProofResult {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProofResult::Proved { proof } => Some(proof),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved { .. })
    }
}
