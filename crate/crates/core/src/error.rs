use crate::tables::FGAbelianGroup;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A homotopy group outside every stored table row.
    #[error("pi_{degree}({space}) is not tabulated")]
    NotTabulated { space: String, degree: i64 },

    /// The table only pins the group down to a finite candidate set.
    #[error("pi_{degree}({space}) is only known up to {} candidates ({citation})", candidates.len())]
    Undetermined {
        space: String,
        degree: i64,
        candidates: Vec<FGAbelianGroup>,
        citation: String,
    },

    #[error("hypothesis not met: {hypothesis} [{rule}]")]
    HypothesisNotMet {
        hypothesis: String,
        /// First degree at which a required vanishing fails, when the
        /// hypothesis is a vanishing range.
        degree: Option<i64>,
        rule: String,
    },

    #[error("unsupported: {reason} [{rule}]")]
    Unsupported { reason: String, rule: String },

    #[error("no splitting: all {nonzero} columns of the reduced attaching matrix are nonzero but the rank is {rank} [{rule}]")]
    NoSplitting {
        nonzero: usize,
        rank: usize,
        rule: String,
    },

    #[error("case inapplicable: {reason} [{rule}]")]
    CaseInapplicable { reason: String, rule: String },

    #[error("{origin}:{line}: {message}")]
    TableSyntax {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("conflicting table rows for pi_{degree}({space}): {first} vs {second}")]
    TableConflict {
        space: String,
        degree: i64,
        first: String,
        second: String,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
