use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variants fall into three families (see [`Error::kind`]): malformed input,
/// violated mathematical preconditions, and failed internal audits. The CLI
/// maps these onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not real (not fixed by complex conjugation)")]
    NotReal,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown builtin arrangement `{0}`")]
    UnknownBuiltin(String),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("invalid linear form: {0}")]
    InvalidForm(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("weight vector does not sum to zero")]
    NotInTorusLie,
    #[error("blocks do not span a pencil (span dimension {0})")]
    NotAPencil(usize),
    #[error("lift hypotheses not met: {0}")]
    PropositionHypothesesNotMet(String),
    #[error("binary form has a repeated factor")]
    NonIsolatedSingularity,
    #[error("point has multiplicity {0} < 3; the associated map is not admissible")]
    NotAdmissible(usize),
    #[error("target curve has Euler characteristic {0} >= 0")]
    NotGeneralType(i64),
    #[error("spectrum is inconsistent: {0}")]
    InconsistentSpectrum(String),
    #[error("no generic projection found: {0}")]
    GenericityFailure(String),
    #[error("internal audit failed: {0}")]
    Internal(String),
}

/// Coarse classification of an [`Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input data.
    Input,
    /// A precondition of a construction does not hold.
    Precondition,
    /// A self-check failed; indicates a bug.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. }
            | Error::UnknownBuiltin(_)
            | Error::DuplicateLine(..)
            | Error::InvalidForm(_)
            | Error::InvalidArgument(_)
            | Error::NotInTorusLie => ErrorKind::Input,
            Error::Internal(_) | Error::GenericityFailure(_) | Error::InconsistentSpectrum(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
