use std::fmt;

use crate::validate::ValidationReport;

/// Pipeline stage an error originated from. Determines the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Parse,
    Validation,
    Computation,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Parse => 2,
            Stage::Validation => 3,
            Stage::Computation => 4,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Parse => "parse",
            Stage::Validation => "validation",
            Stage::Computation => "computation",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text. `location` is a human-readable pointer such as
    /// `weights.csv:14` or `tree.toml: line 3, column 7`.
    #[error("{location}: {message}")]
    Syntax { location: String, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {report}")]
    Invalid {
        context: String,
        report: ValidationReport,
    },

    #[error("unknown index id `{0}`")]
    UnknownIndex(String),

    #[error("index `{0}` is a leaf and has no members")]
    NotAGroup(String),

    #[error("cannot select {requested} of {available} submissions")]
    NotEnoughSubmissions { requested: usize, available: usize },

    #[error("no submissions to aggregate")]
    NoSubmissions,

    #[error("membership tally for `{0}` has n = 0")]
    EmptyTally(String),

    #[error("tally for `{leaf}` counts {total} ballots but n = {n}")]
    TallyMismatch { leaf: String, total: u64, n: u32 },

    #[error("no tally for leaf `{leaf}` of group `{group}`")]
    MissingTally { group: String, leaf: String },

    #[error("no {what} for group `{group}`")]
    MissingGroupData { what: &'static str, group: String },

    #[error("dimension mismatch in `{subject}`: {left} weights vs {right} rows")]
    DimensionMismatch {
        subject: String,
        left: usize,
        right: usize,
    },

    #[error(
        "member order mismatch in `{subject}`: weight `{weight_id}` aligned with row `{row_id}`"
    )]
    MisalignedMembers {
        subject: String,
        weight_id: String,
        row_id: String,
    },

    #[error("vector of length {got} does not match a comment set of {expected} grades")]
    GradeCountMismatch { expected: usize, got: usize },

    #[error("group `{0}` has zero total weight")]
    ZeroTotalWeight(String),

    #[error("composition for `{0}` produced an all-zero vector")]
    DegenerateComposition(String),

    #[error("malformed report: {0}")]
    Report(String),
}

impl Error {
    pub fn stage(&self) -> Stage {
        match self {
            Error::Syntax { .. } | Error::Io { .. } | Error::Report(_) => Stage::Parse,
            Error::Invalid { .. }
            | Error::UnknownIndex(_)
            | Error::NotAGroup(_)
            | Error::NotEnoughSubmissions { .. }
            | Error::NoSubmissions
            | Error::MissingTally { .. }
            | Error::MissingGroupData { .. } => Stage::Validation,
            Error::EmptyTally(_)
            | Error::TallyMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::MisalignedMembers { .. }
            | Error::GradeCountMismatch { .. }
            | Error::ZeroTotalWeight(_)
            | Error::DegenerateComposition(_) => Stage::Computation,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.stage().exit_code()
    }

    pub(crate) fn syntax(location: impl Into<String>, message: impl fmt::Display) -> Self {
        Error::Syntax {
            location: location.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn invalid(context: impl Into<String>, report: ValidationReport) -> Self {
        Error::Invalid {
            context: context.into(),
            report,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
