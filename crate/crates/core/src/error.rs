use thiserror::Error;

use crate::diagram::{ChordId, Kind};

pub type Result<T> = std::result::Result<T, Error>;

/// Malformed text input (diagrams, polynomials, move lists).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown kind `{0}` (expected `linear` or `circular`)")]
    UnknownKind(String),
    #[error("missing `kind` line")]
    MissingKind,
    #[error("missing `seq` line")]
    MissingSeq,
    #[error("chord {chord}: {msg}")]
    Arity { chord: u32, msg: String },
    #[error("chord {chord}: {msg}")]
    Sign { chord: u32, msg: String },
    #[error("polynomial: {0}")]
    Polynomial(String),
    #[error("move: {0}")]
    Move(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected a {expected} diagram, got a {found} one")]
    WrongKind { expected: Kind, found: Kind },
    #[error("diagrams have different kinds ({0} vs {1})")]
    KindMismatch(Kind, Kind),
    #[error("no chord with id {0}")]
    UnknownChord(ChordId),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("covering order must be non-negative, got {0}")]
    NegativeCovering(i64),
    #[error("move does not apply: {0}")]
    InvalidMove(String),
    #[error("not realizable as a writhe polynomial: f(1) = {at_one}, f'(1) = {derivative_at_one}")]
    Unrealizable { at_one: i64, derivative_at_one: i64 },
    #[error("{0}")]
    OutOfDomain(String),
}

impl Error {
    /// Whether this error comes from malformed input rather than a violated
    /// precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
