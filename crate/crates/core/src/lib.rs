//! Reasoning over sorted belief formulas with graded belief strength.

pub mod agent;
pub mod check;
pub mod context;
pub mod ec;
pub mod error;
pub mod formula;
pub mod ground;
pub mod kb;
pub mod moments;
pub mod parse;
pub mod proof;
pub mod prop;
pub mod prover;
pub mod reason;
pub mod scalar;
pub mod sort;
pub mod strength;

pub use error::{KbError, LogicError, ParseError, ReasonError};
pub use formula::{Formula, Modal, Term, Var};
pub use kb::{parse_kb, KbDocument};
pub use parse::{parse_formula, parse_formula_in, print_formula};
pub use sort::{Signature, Sort};
pub use strength::{BeliefStore, StrengthJudgment, StrengthLevel};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
