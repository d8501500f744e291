use thiserror::Error;

use crate::parse::Position;

/// Errors from sort checking and term construction.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("symbol `{0}` redeclared with a different signature")]
    Redeclared(String),
    #[error("`{symbol}` expects {expected} arguments, got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("sort mismatch: expected {expected}, found {found} in `{context}`")]
    SortMismatch {
        expected: String,
        found: String,
        context: String,
    },
}

/// Parse failures, each carrying a source position.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: lex error: {msg}")]
    Lex { pos: Position, msg: String },
    #[error("{pos}: parse error: {msg}")]
    Syntax { pos: Position, msg: String },
    #[error("{pos}: sort error: {source}")]
    Sort {
        pos: Position,
        #[source]
        source: LogicError,
    },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Lex { pos, .. }
            | ParseError::Syntax { pos, .. }
            | ParseError::Sort { pos, .. } => *pos,
        }
    }
}

/// Knowledge-base validation failures.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KbError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{pos}: duplicate label `{label}`")]
    DuplicateLabel { pos: Position, label: String },
    #[error("{pos}: probability {value} outside [0, 1]")]
    ProbabilityRange { pos: Position, value: String },
    #[error("{pos}: malformed probability entry: {msg}")]
    MalformedProbability { pos: Position, msg: String },
    #[error("{pos}: conflicting probability entries for the same formula")]
    ConflictingProbability { pos: Position },
    #[error("{pos}: bad parameter: {msg}")]
    Param { pos: Position, msg: String },
    #[error("{pos}: prior ordering is cyclic at `{moment}`")]
    CyclicOrder { pos: Position, moment: String },
}

/// Errors raised by agent-relative reasoning entry points.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReasonError {
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown moment `{0}`")]
    UnknownMoment(String),
    #[error("moment {from} is not strictly before {to}")]
    NotBefore { from: String, to: String },
    #[error("premise moment {from} is later than {to}")]
    Later { from: String, to: String },
    #[error("premises do not entail the conclusion within the proof budget")]
    EntailmentFailed,
    #[error("premises belong to different agents")]
    MixedAgents,
    #[error("expected a perception formula P(a, t, φ)")]
    NotAPercept,
    #[error(transparent)]
    Logic(#[from] LogicError),
}
