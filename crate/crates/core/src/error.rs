use thiserror::Error;

use crate::finiteness::Diamond;

/// Structural problems with a factor triple.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no map entry for symbol `{0}`")]
    MissingMapEntry(String),
    #[error("duplicate map entry for symbol `{0}`")]
    DuplicateMapEntry(String),
    #[error("empty shift: no symbol survives trimming of dead ends")]
    EmptyShift,
    #[error("block length must be at least 1, got {0}")]
    BadBlockLength(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError { line, column, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    pub(crate) fn triple(line: usize, column: usize, err: TripleError) -> Self {
        ParseError { line, column, kind: ParseErrorKind::Triple(err) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("not a word of Y (no preimage survives at position {position})")]
    NotAWord { position: usize },
    #[error("symbol index {0} out of range")]
    BadSymbol(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("the domain shift is not irreducible")]
    NotIrreducible,
    #[error("the code is not finite-to-one")]
    NotFiniteToOne(Diamond),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("pairings need words of length at least 2, got {0}")]
    TooShort(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("junction mismatch: first relation ends over y{left}, second starts over y{right}")]
    JunctionMismatch { left: usize, right: usize },
    #[error("empty composition: the joined word is not a word of Y")]
    EmptyComposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: {0} (pass an override to force)")]
    TooLarge(String),
    #[error("oracle precondition failed: {0}")]
    Precondition(String),
    #[error("no transition block of length at most {0}")]
    NoTransitionBlock(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no acceptable triple after {0} attempts")]
    RetriesExhausted(usize),
}
