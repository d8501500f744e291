//! Parenthesized prefix syntax for formulas, and the deterministic printer.
//!
//! ```text
//! (believes john now (perceives mary t1 (holds raining t1)))
//! (forall (x:Ticket y) (implies (win x) (not (win y))))
//! ```
//!
//! Binders are written `name:Sort` or bare `name`, in which case the sort is
//! taken from the first argument position the variable occupies. Free
//! variables are written `?name:Sort`.

use std::fmt;

use serde::Serialize;

use crate::error::{LogicError, ParseError};
use crate::formula::{Formula, Modal, Term, Var};
use crate::sort::{FunctionSig, Signature, Sort};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SExp {
    Atom(String, Position),
    List(Vec<SExp>, Position),
}

impl SExp {
    pub fn pos(&self) -> Position {
        match self {
            SExp::Atom(_, p) | SExp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExp::Atom(s, _) => Some(s),
            SExp::List(..) => None,
        }
    }
}

/// Reads every top-level s-expression in `text`. `;` starts a line comment.
pub fn read_sexps(text: &str) -> Result<Vec<SExp>, ParseError> {
    let mut stack: Vec<(Vec<SExp>, Position)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let mut end = Position { line, column };
    while let Some(&ch) = chars.peek() {
        let pos = Position { line, column };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
                continue;
            }
            '(' => {
                chars.next();
                stack.push((Vec::new(), pos));
            }
            ')' => {
                chars.next();
                let (items, open) = stack.pop().ok_or_else(|| ParseError::Syntax {
                    pos,
                    msg: "unexpected `)`".into(),
                })?;
                let node = SExp::List(items, open);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let mut tok = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    if c.is_control() {
                        return Err(ParseError::Lex {
                            pos: Position { line, column },
                            msg: format!("unexpected character {c:?}"),
                        });
                    }
                    tok.push(c);
                    chars.next();
                    column += 1;
                }
                let node = SExp::Atom(tok, pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
                continue;
            }
        }
        column += 1;
        end = Position { line, column };
    }
    end = Position {
        line,
        column: column.max(end.column.min(column)),
    };
    if let Some((_, open)) = stack.last() {
        return Err(ParseError::Syntax {
            pos: end,
            msg: format!("unexpected end of input; `(` at {open} is never closed"),
        });
    }
    Ok(top)
}

const KEYWORDS: &[&str] = &[
    "not", "and", "or", "implies", "iff", "xor", "forall", "exists", "believes", "perceives", "withholds",
    "true", "false",
];

/// Converts s-expressions to formulas against a signature. In open mode,
/// unknown symbols are declared on first use with sorts inferred from their
/// position; in closed mode they are errors.
pub struct FormulaReader<'s> {
    sig: &'s mut Signature,
    open: bool,
    env: Vec<(String, Option<Sort>)>,
}

const UNRESOLVED: &str = "?";

impl<'s> FormulaReader<'s> {
    pub fn closed(sig: &'s mut Signature) -> Self {
        FormulaReader {
            sig,
            open: false,
            env: Vec::new(),
        }
    }

    pub fn open(sig: &'s mut Signature) -> Self {
        FormulaReader {
            sig,
            open: true,
            env: Vec::new(),
        }
    }

    fn sort_err(pos: Position, source: LogicError) -> ParseError {
        ParseError::Sort { pos, source }
    }

    fn syntax(pos: Position, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos, msg: msg.into() }
    }

    pub fn formula(&mut self, e: &SExp) -> Result<Formula, ParseError> {
        match e {
            SExp::Atom(s, pos) => match s.as_str() {
                "true" => Ok(Formula::Top),
                "false" => Ok(Formula::Bottom),
                name => {
                    self.nullary_atom(name, *pos)?;
                    Ok(Formula::Atom(name.to_string(), vec![]))
                }
            },
            SExp::List(items, pos) => {
                let pos = *pos;
                let (head, args) = match items.split_first() {
                    Some((SExp::Atom(h, _), rest)) => (h.as_str(), rest),
                    Some(_) => return Err(Self::syntax(pos, "form must start with a symbol")),
                    None => return Err(Self::syntax(pos, "empty form")),
                };
                let arity = |n: usize| -> Result<(), ParseError> {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(Self::syntax(pos, format!("`{head}` takes {n} arguments, got {}", args.len())))
                    }
                };
                match head {
                    "not" => {
                        arity(1)?;
                        Ok(Formula::Not(Box::new(self.formula(&args[0])?)))
                    }
                    "and" | "or" | "xor" => {
                        let xs = args.iter().map(|a| self.formula(a)).collect::<Result<Vec<_>, _>>()?;
                        Ok(match head {
                            "and" => Formula::And(xs),
                            "or" => Formula::Or(xs),
                            _ => Formula::Xor(xs),
                        })
                    }
                    "implies" | "iff" => {
                        arity(2)?;
                        let a = Box::new(self.formula(&args[0])?);
                        let b = Box::new(self.formula(&args[1])?);
                        Ok(if head == "implies" {
                            Formula::Implies(a, b)
                        } else {
                            Formula::Iff(a, b)
                        })
                    }
                    "forall" | "exists" => {
                        arity(2)?;
                        self.quantified(head == "forall", &args[0], &args[1])
                    }
                    "believes" | "perceives" | "withholds" => {
                        arity(3)?;
                        let modal = match head {
                            "believes" => Modal::Believes,
                            "perceives" => Modal::Perceives,
                            _ => Modal::Withholds,
                        };
                        let agent = self.term(&args[0], Some(&Sort::agent()))?;
                        let moment = self.term(&args[1], Some(&Sort::moment()))?;
                        let body = self.formula(&args[2])?;
                        Ok(Formula::Modal(modal, agent, moment, Box::new(body)))
                    }
                    "true" | "false" => Err(Self::syntax(pos, format!("`{head}` is not a predicate"))),
                    pred => {
                        let args = self.application(pred, args, Some(&Sort::boolean()), pos)?;
                        Ok(Formula::Atom(pred.to_string(), args))
                    }
                }
            }
        }
    }

    fn nullary_atom(&mut self, name: &str, pos: Position) -> Result<(), ParseError> {
        if let Some(s) = self.sig.const_sort(name) {
            if self.sig.is_subsort(s, &Sort::boolean()) {
                return Ok(());
            }
            return Err(Self::sort_err(
                pos,
                LogicError::SortMismatch {
                    expected: "Boolean".into(),
                    found: s.to_string(),
                    context: name.into(),
                },
            ));
        }
        if let Some(f) = self.sig.func(name) {
            if f.args.is_empty() && f.result == Sort::boolean() {
                return Ok(());
            }
        }
        if self.open && valid_identifier(name) {
            self.sig
                .declare_const(name, Sort::boolean())
                .map_err(|e| Self::sort_err(pos, e))?;
            return Ok(());
        }
        Err(Self::sort_err(pos, LogicError::UnknownSymbol(name.into())))
    }

    fn binders(&self, e: &SExp) -> Result<Vec<(String, Option<Sort>)>, ParseError> {
        let SExp::List(items, pos) = e else {
            return Err(Self::syntax(e.pos(), "expected a binder list"));
        };
        if items.is_empty() {
            return Err(Self::syntax(*pos, "empty binder list"));
        }
        items
            .iter()
            .map(|it| {
                let s = it.as_atom().ok_or_else(|| Self::syntax(it.pos(), "binder must be a symbol"))?;
                let (name, sort) = match s.split_once(':') {
                    Some((n, srt)) => (n, Some(Sort::new(srt))),
                    None => (s, None),
                };
                if !valid_identifier(name) || KEYWORDS.contains(&name) {
                    return Err(Self::syntax(it.pos(), format!("bad variable name `{name}`")));
                }
                if let Some(srt) = &sort {
                    if !self.sig.has_sort(srt) {
                        return Err(Self::sort_err(it.pos(), LogicError::UnknownSort(srt.0.clone())));
                    }
                }
                Ok((name.to_string(), sort))
            })
            .collect()
    }

    fn quantified(&mut self, universal: bool, binders: &SExp, body: &SExp) -> Result<Formula, ParseError> {
        let vars = self.binders(binders)?;
        let base = self.env.len();
        self.env.extend(vars.iter().cloned());
        let result = self.formula(body);
        let slots: Vec<_> = self.env.drain(base..).collect();
        let mut f = result?;
        for (name, sort) in slots.into_iter().rev() {
            let placeholder = Var::new(name.clone(), Sort::new(UNRESOLVED));
            let var = Var::new(name, sort.unwrap_or_else(Sort::object));
            f = f.subst_unchecked(&placeholder, &Term::Var(var.clone()));
            f = if universal {
                Formula::Forall(var, Box::new(f))
            } else {
                Formula::Exists(var, Box::new(f))
            };
        }
        Ok(f)
    }

    fn application(
        &mut self,
        name: &str,
        args: &[SExp],
        expected: Option<&Sort>,
        pos: Position,
    ) -> Result<Vec<Term>, ParseError> {
        if KEYWORDS.contains(&name) {
            return Err(Self::syntax(pos, format!("`{name}` cannot be used as a function")));
        }
        let sig = match self.sig.func(name) {
            Some(s) => s.clone(),
            None if self.open && valid_identifier(name) => {
                let mut arg_sorts = Vec::new();
                let mut terms = Vec::new();
                for a in args {
                    let t = self.term(a, None)?;
                    arg_sorts.push(self.resolved_sort(&t).unwrap_or_else(Sort::object));
                    terms.push(t);
                }
                let result = expected.cloned().unwrap_or_else(Sort::object);
                self.sig
                    .declare_func(
                        name,
                        FunctionSig {
                            args: arg_sorts,
                            result,
                        },
                    )
                    .map_err(|e| Self::sort_err(pos, e))?;
                return Ok(terms);
            }
            None => return Err(Self::sort_err(pos, LogicError::UnknownSymbol(name.into()))),
        };
        if sig.args.len() != args.len() {
            return Err(Self::sort_err(
                pos,
                LogicError::Arity {
                    symbol: name.into(),
                    expected: sig.args.len(),
                    found: args.len(),
                },
            ));
        }
        if let Some(exp) = expected {
            if !self.sig.is_subsort(&sig.result, exp) {
                return Err(Self::sort_err(
                    pos,
                    LogicError::SortMismatch {
                        expected: exp.to_string(),
                        found: sig.result.to_string(),
                        context: name.into(),
                    },
                ));
            }
        }
        args.iter().zip(&sig.args).map(|(a, s)| self.term(a, Some(s))).collect()
    }

    fn resolved_sort(&self, t: &Term) -> Option<Sort> {
        match t {
            Term::Var(v) if v.sort.0 == UNRESOLVED => None,
            Term::Int(_) => Some(Sort::moment()),
            other => other.sort(self.sig).ok(),
        }
    }

    pub fn term(&mut self, e: &SExp, expected: Option<&Sort>) -> Result<Term, ParseError> {
        let pos = e.pos();
        let t = match e {
            SExp::List(items, _) => {
                let (head, args) = match items.split_first() {
                    Some((SExp::Atom(h, _), rest)) if !is_keyword(h) => (h.clone(), rest),
                    _ => return Err(Self::syntax(pos, "expected a term")),
                };
                let terms = self.application(&head, args, expected, pos)?;
                return Ok(Term::App(head, terms));
            }
            SExp::Atom(s, _) => {
                if let Some(slot) = self.env.iter_mut().rev().find(|(n, _)| n == s) {
                    let sort = match (&slot.1, expected) {
                        (Some(srt), _) => srt.clone(),
                        (None, Some(exp)) => {
                            slot.1 = Some(exp.clone());
                            exp.clone()
                        }
                        (None, None) => return Ok(Term::Var(Var::new(s.clone(), Sort::new(UNRESOLVED)))),
                    };
                    // placeholder vars are rewritten to the final sort when the binder closes
                    let t = Term::Var(Var::new(s.clone(), Sort::new(UNRESOLVED)));
                    if let Some(exp) = expected {
                        if !self.sig.is_subsort(&sort, exp) {
                            return Err(Self::sort_err(
                                pos,
                                LogicError::SortMismatch {
                                    expected: exp.to_string(),
                                    found: sort.to_string(),
                                    context: s.clone(),
                                },
                            ));
                        }
                    }
                    return Ok(t);
                }
                if let Some(rest) = s.strip_prefix('?') {
                    let (name, sort) = match rest.split_once(':') {
                        Some((n, srt)) => (n, Sort::new(srt)),
                        None => (rest, expected.cloned().unwrap_or_else(Sort::object)),
                    };
                    if !valid_identifier(name) {
                        return Err(Self::syntax(pos, format!("bad variable name `{name}`")));
                    }
                    if !self.sig.has_sort(&sort) {
                        return Err(Self::sort_err(pos, LogicError::UnknownSort(sort.0)));
                    }
                    Term::Var(Var::new(name, sort))
                } else if let Ok(i) = s.parse::<i64>() {
                    Term::Int(i)
                } else if self.sig.const_sort(s).is_some() {
                    Term::Const(s.clone())
                } else if self.sig.func(s).is_some() {
                    return Err(Self::syntax(pos, format!("function `{s}` used without arguments")));
                } else if self.open && valid_identifier(s) && !KEYWORDS.contains(&s.as_str()) {
                    let sort = expected.cloned().unwrap_or_else(Sort::object);
                    self.sig.declare_const(s, sort).map_err(|e| Self::sort_err(pos, e))?;
                    Term::Const(s.clone())
                } else {
                    return Err(Self::sort_err(pos, LogicError::UnknownSymbol(s.clone())));
                }
            }
        };
        if let Some(exp) = expected {
            t.check(exp, self.sig).map_err(|e| Self::sort_err(pos, e))?;
        }
        Ok(t)
    }
}

fn is_keyword(h: &str) -> bool {
    KEYWORDS.contains(&h)
}

pub fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\'' | '.'))
}

fn single(text: &str) -> Result<SExp, ParseError> {
    let mut es = read_sexps(text)?;
    match es.len() {
        1 => Ok(es.pop().unwrap()),
        0 => Err(ParseError::Syntax {
            pos: Position { line: 1, column: 1 },
            msg: "expected a formula".into(),
        }),
        _ => Err(ParseError::Syntax {
            pos: es[1].pos(),
            msg: "trailing input after formula".into(),
        }),
    }
}

/// Parses a standalone formula, inferring declarations for unknown symbols.
/// Returns the formula together with the signature it was checked against.
pub fn parse_formula(text: &str) -> Result<(Formula, Signature), ParseError> {
    let mut sig = Signature::core();
    let f = parse_formula_open(text, &mut sig)?;
    Ok((f, sig))
}

/// Parses against `sig`, extending it with inferred declarations.
pub fn parse_formula_open(text: &str, sig: &mut Signature) -> Result<Formula, ParseError> {
    let e = single(text)?;
    FormulaReader::open(sig).formula(&e)
}

/// Parses against a fixed signature; unknown symbols are errors.
pub fn parse_formula_in(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let e = single(text)?;
    let mut sig = sig.clone();
    FormulaReader::closed(&mut sig).formula(&e)
}

/// Prints `f` in concrete syntax with binders renamed to `_0`, `_1`, ...
/// by depth. Sugar (`withholds`, `xor`) is printed as written.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&f.alpha_normalize(), &mut out);
    out
}

fn write_term(t: &Term, bound: &[String], out: &mut String) {
    match t {
        Term::Var(v) if bound.contains(&v.name) => out.push_str(&v.name),
        Term::Var(v) => {
            out.push('?');
            out.push_str(&v.name);
            out.push(':');
            out.push_str(v.sort.as_str());
        }
        Term::Const(c) => out.push_str(c),
        Term::Int(i) => out.push_str(&i.to_string()),
        Term::App(name, args) => {
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push(' ');
                write_term(a, bound, out);
            }
            out.push(')');
        }
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    write_formula_in(f, &mut Vec::new(), out)
}

fn write_formula_in(f: &Formula, bound: &mut Vec<String>, out: &mut String) {
    let list = |head: &str, xs: &[&Formula], bound: &mut Vec<String>, out: &mut String| {
        out.push('(');
        out.push_str(head);
        for x in xs {
            out.push(' ');
            write_formula_in(x, bound, out);
        }
        out.push(')');
    };
    match f {
        Formula::Top => out.push_str("true"),
        Formula::Bottom => out.push_str("false"),
        Formula::Atom(p, args) if args.is_empty() => out.push_str(p),
        Formula::Atom(p, args) => write_term(&Term::App(p.clone(), args.clone()), bound, out),
        Formula::Not(a) => list("not", &[a], bound, out),
        Formula::And(xs) => list("and", &xs.iter().collect::<Vec<_>>(), bound, out),
        Formula::Or(xs) => list("or", &xs.iter().collect::<Vec<_>>(), bound, out),
        Formula::Xor(xs) => list("xor", &xs.iter().collect::<Vec<_>>(), bound, out),
        Formula::Implies(a, b) => list("implies", &[a, b], bound, out),
        Formula::Iff(a, b) => list("iff", &[a, b], bound, out),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push('(');
            out.push_str(if matches!(f, Formula::Forall(..)) { "forall" } else { "exists" });
            out.push_str(" (");
            out.push_str(&v.name);
            out.push(':');
            out.push_str(v.sort.as_str());
            out.push_str(") ");
            bound.push(v.name.clone());
            write_formula_in(body, bound, out);
            bound.pop();
            out.push(')');
        }
        Formula::Modal(m, a, t, body) => {
            out.push('(');
            out.push_str(m.keyword());
            out.push(' ');
            write_term(a, bound, out);
            out.push(' ');
            write_term(t, bound, out);
            out.push(' ');
            write_formula_in(body, bound, out);
            out.push(')');
        }
    }
}
