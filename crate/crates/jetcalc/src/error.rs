//! Crate-wide error type.

use std::fmt;

/// Positioned parser diagnostic with the token set the parser would have
/// accepted at the failure point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, col {}: expected one of [{}], found `{}`",
            self.line,
            self.col,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The dominant part of the zero polynomial is undefined.
    ZeroDominant,
    /// An argument lies outside an operation's domain.
    Domain(String),
    /// A class is attached to a different tower level than required.
    LevelMismatch { expected: usize, found: usize },
    /// An expression atom refers to a level or index above the declared bound.
    OutOfRange { atom: String, max: usize },
    /// Index data does not match the geometry's dimension budget.
    DimensionMismatch(String),
    /// An operation precondition is violated.
    Precondition(String),
    /// Source text failed to parse.
    Parse(ParseDiagnostic),
    /// Command-line usage error.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDominant => write!(f, "dominant part of the zero polynomial is undefined"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::LevelMismatch { expected, found } => {
                write!(f, "level mismatch: expected level {expected}, found {found}")
            }
            Error::OutOfRange { atom, max } => {
                write!(f, "out of range: atom `{atom}` exceeds maximum {max}")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Parse(diag) => write!(f, "parse error: {diag}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
