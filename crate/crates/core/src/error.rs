use thiserror::Error;

/// Errors produced by the library. Fixed-width arithmetic that can
/// realistically overflow is checked and reported as [`Error::Overflow`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("trace {0} is not hyperbolic (need |T| >= 3)")]
    InvalidTrace(i64),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),

    #[error("tape count mismatch: {left} vs {right}")]
    TapeMismatch { left: usize, right: usize },

    #[error("incompatible alphabets: {0}")]
    AlphabetMismatch(String),

    #[error("tape index {index} out of range for {tapes} tapes")]
    BadTapeIndex { index: usize, tapes: usize },

    #[error("operation requires a deterministic automaton")]
    NotDeterministic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("coefficient {coeff} outside [-{bound}, {bound}]")]
    CoefficientOutOfRange { coeff: i64, bound: i64 },

    #[error("resource limit exceeded while {what}: limit {limit}{}", .estimate.map(|e| format!(", estimated {e}")).unwrap_or_default())]
    ResourceLimit {
        what: String,
        limit: u64,
        estimate: Option<u64>,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// Short machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidTrace(_) => "invalid_trace",
            Error::Parse { .. } => "parse",
            Error::UnknownLetter(_) => "unknown_letter",
            Error::TapeMismatch { .. } => "tape_mismatch",
            Error::AlphabetMismatch(_) => "alphabet_mismatch",
            Error::BadTapeIndex { .. } => "bad_tape_index",
            Error::NotDeterministic => "not_deterministic",
            Error::Unsupported(_) => "unsupported",
            Error::MalformedWord(_) => "malformed_word",
            Error::CoefficientOutOfRange { .. } => "coefficient_out_of_range",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::Overflow(_) => "overflow",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
