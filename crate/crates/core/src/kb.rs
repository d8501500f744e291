//! Knowledge-base documents: declarations, labelled axioms, the probability
//! table, the candidate pool for revisions, moment ordering and parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ec::EcFlavor;
use crate::error::{KbError, ParseError, ReasonError};
use crate::formula::{Formula, Term};
use crate::moments::MomentOrder;
use crate::parse::{read_sexps, valid_identifier, FormulaReader, Position, SExp};
use crate::sort::{FunctionSig, Signature, Sort};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Axiom {
    pub label: String,
    pub formula: Formula,
    /// Held as certain (strength 5) and protected from removal in revisions.
    pub certain: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbEntry {
    pub agent: Term,
    pub moment: Term,
    pub formula: Formula,
    #[serde(serialize_with = "serialize_ratio")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub formula: Formula,
    /// Overrides the symbol-count weight in revision distances.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub weight: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    /// Maximum level spread among premises of the strength-propagating belief rule.
    pub u: u8,
    pub proof_depth: usize,
    pub add_max: usize,
    pub remove_max: usize,
    pub consistency_depth: usize,
    pub ec_flavor: EcFlavor,
    /// Whether the goal itself may be added when searching for a revision.
    pub trivial_addition: bool,
    pub saturate_rounds: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            u: 2,
            proof_depth: 12,
            add_max: 2,
            remove_max: 2,
            consistency_depth: 16,
            ec_flavor: EcFlavor::Minimal,
            trivial_addition: true,
            saturate_rounds: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KbDocument {
    pub signature: Signature,
    pub axioms: Vec<Axiom>,
    pub probabilities: Vec<ProbEntry>,
    pub candidates: Vec<Candidate>,
    pub prior: Vec<(Term, Term)>,
    pub params: Params,
    pub order: MomentOrder,
}

impl Default for KbDocument {
    fn default() -> Self {
        KbDocument {
            signature: Signature::core(),
            axioms: Vec::new(),
            probabilities: Vec::new(),
            candidates: Vec::new(),
            prior: Vec::new(),
            params: Params::default(),
            order: MomentOrder::default(),
        }
    }
}

pub fn serialize_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

fn serialize_opt_ratio<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_ratio(r)),
        None => s.serialize_none(),
    }
}

/// Exact fraction, `n/d`, or `n` when the denominator is one.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `n/d` or a plain decimal such as `0.25`.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n).ok()?;
        let d = BigInt::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = BigInt::from_str(&format!("{int}{frac}")).ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(digits, scale));
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

impl KbDocument {
    pub fn agents(&self) -> BTreeSet<Term> {
        self.signature
            .consts()
            .filter(|(_, s)| self.signature.is_subsort(s, &Sort::agent()))
            .map(|(c, _)| Term::Const(c.clone()))
            .collect()
    }

    pub fn check_agent(&self, agent: &Term) -> Result<(), ReasonError> {
        match agent {
            Term::Const(_) if self.agents().contains(agent) => Ok(()),
            _ => Err(ReasonError::UnknownAgent(agent.to_string())),
        }
    }

    pub fn check_moment(&self, moment: &Term) -> Result<(), ReasonError> {
        if self.order.is_declared(moment) {
            Ok(())
        } else {
            Err(ReasonError::UnknownMoment(moment.to_string()))
        }
    }

    pub fn axiom_formulas(&self) -> Vec<Formula> {
        self.axioms.iter().map(|a| a.formula.clone()).collect()
    }

    /// Parses a formula against this KB's signature.
    pub fn formula(&self, text: &str) -> Result<Formula, ParseError> {
        crate::parse::parse_formula_in(text, &self.signature)
    }

    pub fn term(&self, text: &str) -> Result<Term, ParseError> {
        let es = read_sexps(text)?;
        let e = es.first().ok_or(ParseError::Syntax {
            pos: Position { line: 1, column: 1 },
            msg: "expected a term".into(),
        })?;
        let mut sig = self.signature.clone();
        FormulaReader::closed(&mut sig).term(e, None)
    }

    /// Axioms plus the builtin event-calculus background selected by `ec-flavor`.
    pub fn background(&self) -> Vec<Formula> {
        let mut out = self.axiom_formulas();
        out.extend(crate::ec::ec_axioms(self.params.ec_flavor));
        out
    }
}

fn syntax(pos: Position, msg: impl Into<String>) -> KbError {
    KbError::Parse(ParseError::Syntax { pos, msg: msg.into() })
}

fn sort_err(pos: Position, e: crate::error::LogicError) -> KbError {
    KbError::Parse(ParseError::Sort { pos, source: e })
}

fn atom_arg<'a>(items: &'a [SExp], i: usize, pos: Position, what: &str) -> Result<&'a str, KbError> {
    items
        .get(i)
        .and_then(SExp::as_atom)
        .ok_or_else(|| syntax(pos, format!("expected {what}")))
}

/// Parses and validates a knowledge-base file.
pub fn parse_kb(text: &str) -> Result<KbDocument, KbError> {
    let forms = read_sexps(text)?;
    let mut kb = KbDocument::default();
    let mut labels = BTreeSet::new();
    let mut probs: BTreeMap<(Term, Term, Formula), (BigRational, Position)> = BTreeMap::new();
    let mut declared_moments = Vec::new();

    for form in &forms {
        let pos = form.pos();
        let SExp::List(items, _) = form else {
            return Err(syntax(pos, "expected a top-level form"));
        };
        let head = atom_arg(items, 0, pos, "a form keyword")?;
        let sig = &mut kb.signature;
        match head {
            "sort" => {
                if !(2..=3).contains(&items.len()) {
                    return Err(syntax(pos, "(sort <name> [<parent>])"));
                }
                let name = atom_arg(items, 1, pos, "a sort name")?;
                let parent = items.get(2).map(|p| p.as_atom().map(Sort::new)).transpose_none(pos)?;
                sig.declare_sort(Sort::new(name), parent).map_err(|e| sort_err(pos, e))?;
            }
            "const" => {
                if items.len() != 3 {
                    return Err(syntax(pos, "(const <name> <sort>)"));
                }
                let name = atom_arg(items, 1, pos, "a constant name")?;
                if !valid_identifier(name) {
                    return Err(syntax(pos, format!("bad constant name `{name}`")));
                }
                let sort = Sort::new(atom_arg(items, 2, pos, "a sort")?);
                sig.declare_const(name, sort.clone()).map_err(|e| sort_err(pos, e))?;
                if sig.is_subsort(&sort, &Sort::moment()) {
                    declared_moments.push(Term::constant(name));
                }
            }
            "func" => {
                if items.len() != 4 {
                    return Err(syntax(pos, "(func <name> (<sort>...) <sort>)"));
                }
                let name = atom_arg(items, 1, pos, "a function name")?;
                let SExp::List(args, _) = &items[2] else {
                    return Err(syntax(items[2].pos(), "expected an argument sort list"));
                };
                let args = args
                    .iter()
                    .map(|a| a.as_atom().map(Sort::new).ok_or_else(|| syntax(a.pos(), "expected a sort")))
                    .collect::<Result<Vec<_>, _>>()?;
                let result = Sort::new(atom_arg(items, 3, pos, "a result sort")?);
                sig.declare_func(name, FunctionSig { args, result })
                    .map_err(|e| sort_err(pos, e))?;
            }
            "axiom" => {
                let label = atom_arg(items, 1, pos, "a label")?.to_string();
                let (certain, body) = match items.get(2).and_then(SExp::as_atom) {
                    Some(":certain") => (true, 3),
                    _ => (false, 2),
                };
                if items.len() != body + 1 {
                    return Err(syntax(pos, "(axiom <label> [:certain] <formula>)"));
                }
                if !labels.insert(label.clone()) {
                    return Err(KbError::DuplicateLabel { pos, label });
                }
                let formula = FormulaReader::closed(sig).formula(&items[body])?;
                kb.axioms.push(Axiom {
                    label,
                    formula,
                    certain,
                });
            }
            "candidate" => {
                if !(3..=4).contains(&items.len()) {
                    return Err(syntax(pos, "(candidate <label> <formula> [<weight>])"));
                }
                let label = atom_arg(items, 1, pos, "a label")?.to_string();
                if !labels.insert(label.clone()) {
                    return Err(KbError::DuplicateLabel { pos, label });
                }
                let formula = FormulaReader::closed(sig).formula(&items[2])?;
                let weight = match items.get(3) {
                    Some(w) => {
                        let text = w.as_atom().ok_or_else(|| syntax(w.pos(), "expected a weight"))?;
                        let r = parse_ratio(text).ok_or_else(|| syntax(w.pos(), "bad weight"))?;
                        if r < BigRational::zero() {
                            return Err(syntax(w.pos(), "weights are non-negative"));
                        }
                        Some(r)
                    }
                    None => None,
                };
                kb.candidates.push(Candidate { label, formula, weight });
            }
            "pr" => {
                if items.len() != 5 {
                    return Err(KbError::MalformedProbability {
                        pos,
                        msg: "(pr <agent> <moment> <formula> <rational>)".into(),
                    });
                }
                let mut reader = FormulaReader::closed(sig);
                let agent = reader.term(&items[1], Some(&Sort::agent()))?;
                let moment = reader.term(&items[2], Some(&Sort::moment()))?;
                let formula = reader.formula(&items[3])?;
                let text = items[4].as_atom().ok_or_else(|| KbError::MalformedProbability {
                    pos,
                    msg: "probability must be a number".into(),
                })?;
                let value = parse_ratio(text).ok_or_else(|| KbError::MalformedProbability {
                    pos,
                    msg: format!("cannot read `{text}` as a rational"),
                })?;
                if value < BigRational::zero() || value > BigRational::one() {
                    return Err(KbError::ProbabilityRange {
                        pos,
                        value: text.to_string(),
                    });
                }
                let key_f = formula.canonical();
                let complement = (agent.clone(), moment.clone(), key_f.complement().canonical());
                if let Some((other, _)) = probs.get(&complement) {
                    if *other != BigRational::one() - &value {
                        return Err(KbError::ConflictingProbability { pos });
                    }
                }
                let key = (agent.clone(), moment.clone(), key_f);
                match probs.get(&key) {
                    Some((v, _)) if *v != value => return Err(KbError::ConflictingProbability { pos }),
                    Some(_) => continue,
                    None => {
                        probs.insert(key, (value.clone(), pos));
                    }
                }
                kb.probabilities.push(ProbEntry {
                    agent,
                    moment,
                    formula,
                    value,
                });
            }
            "prior" => {
                if items.len() != 3 {
                    return Err(syntax(pos, "(prior <moment> <moment>)"));
                }
                let mut reader = FormulaReader::closed(sig);
                let a = reader.term(&items[1], Some(&Sort::moment()))?;
                let b = reader.term(&items[2], Some(&Sort::moment()))?;
                kb.prior.push((a, b));
            }
            "param" => parse_param(&mut kb.params, items, pos)?,
            other => return Err(syntax(pos, format!("unknown form `{other}`"))),
        }
    }
    kb.order = MomentOrder::new(declared_moments, kb.prior.clone()).map_err(|m| KbError::CyclicOrder {
        pos: forms.last().map(SExp::pos).unwrap_or(Position { line: 1, column: 1 }),
        moment: m.to_string(),
    })?;
    Ok(kb)
}

trait TransposeNone {
    fn transpose_none(self, pos: Position) -> Result<Option<Sort>, KbError>;
}

impl TransposeNone for Option<Option<Sort>> {
    fn transpose_none(self, pos: Position) -> Result<Option<Sort>, KbError> {
        match self {
            None => Ok(None),
            Some(Some(s)) => Ok(Some(s)),
            Some(None) => Err(syntax(pos, "expected a parent sort name")),
        }
    }
}

fn parse_param(params: &mut Params, items: &[SExp], pos: Position) -> Result<(), KbError> {
    let bad = |msg: String| KbError::Param { pos, msg };
    if items.len() != 3 {
        return Err(bad("(param <name> <value>)".into()));
    }
    let name = atom_arg(items, 1, pos, "a parameter name")?;
    let value = atom_arg(items, 2, pos, "a parameter value")?;
    let nat = || {
        value
            .parse::<usize>()
            .map_err(|_| bad(format!("`{name}` expects a natural number, got `{value}`")))
    };
    match name {
        "u" => {
            params.u = u8::try_from(nat()?).map_err(|_| bad("u is too large".into()))?;
        }
        "proof-depth" => params.proof_depth = nat()?,
        "add-max" => params.add_max = nat()?,
        "remove-max" => params.remove_max = nat()?,
        "consistency-depth" => params.consistency_depth = nat()?,
        "saturate-rounds" => params.saturate_rounds = nat()?,
        "ec-flavor" => {
            params.ec_flavor = match value {
                "minimal" => EcFlavor::Minimal,
                "inertial" => EcFlavor::Inertial,
                _ => return Err(bad(format!("unknown ec-flavor `{value}`"))),
            }
        }
        "trivial-addition" => {
            params.trivial_addition = match value {
                "on" => true,
                "off" => false,
                _ => return Err(bad("trivial-addition expects on|off".into())),
            }
        }
        _ => return Err(bad(format!("unknown parameter `{name}`"))),
    }
    Ok(())
}
