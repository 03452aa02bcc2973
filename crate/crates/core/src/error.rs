use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is not a primary output")]
    NotAnOutput(usize),
    #[error("cycle through vertex {0}")]
    Cycle(usize),
    #[error("gate {vertex}: function arity {arity} but {fanin} fanins")]
    ArityMismatch { vertex: usize, arity: usize, fanin: usize },
    #[error("{0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RevError {
    #[error("line index {0} out of range")]
    LineOutOfRange(usize),
    #[error("target line {0} is also a control")]
    TargetInControls(usize),
    #[error("duplicate control line {0}")]
    DuplicateControl(usize),
    #[error("control function arity {arity} does not match {controls} controls")]
    ArityMismatch { arity: usize, controls: usize },
    #[error("REAL output needs MCT gates only; gate {0} is a single-target gate")]
    NotMct(usize),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("network error: {0}")]
    Network(#[from] NetworkError),
    #[error("reversible network error: {0}")]
    Rev(#[from] RevError),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no ancilla available for a {0}-control Toffoli")]
    NoAncilla(usize),
    #[error("function has {0} variables; classification supports at most 4")]
    TooManyVars(u32),
    #[error("ESOP support of {0} variables exceeds 32")]
    EsopTooWide(usize),
    #[error("database: {0}")]
    Database(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
