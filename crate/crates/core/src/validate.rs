//! Structural violations reported by the validators.
//!
//! Validators never fail: they return every problem they find as data so a
//! caller can show all of them at once. Use [`ValidationReport::into_result`]
//! to turn a non-empty report into an [`Error`](crate::Error).

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    // index tree
    DuplicateId {
        id: String,
    },
    SingleChildGroup {
        id: String,
    },
    MixedLeafDepth {
        depths: Vec<usize>,
    },
    UnsupportedDepth {
        depth: usize,
    },
    EmptyName {
        id: String,
    },
    EmptyTree,
    ReservedId {
        id: String,
    },
    BadCommentSet {
        reason: String,
    },

    // weight sheets
    MissingGroup {
        consultant: String,
        group: String,
    },
    UnknownGroup {
        consultant: String,
        group: String,
    },
    MissingMember {
        consultant: String,
        group: String,
        member: String,
    },
    ExtraMember {
        consultant: String,
        group: String,
        member: String,
    },
    DuplicateScore {
        consultant: String,
        group: String,
        member: String,
    },
    ScoreOutOfRange {
        consultant: String,
        group: String,
        member: String,
        score: f64,
    },
    BudgetMismatch {
        consultant: String,
        group: String,
        sum: f64,
        budget: f64,
    },
    DuplicateConsultant {
        consultant: String,
    },

    // ballots
    IncompleteBallot {
        consultant: String,
        leaf: String,
    },
    UnknownLeaf {
        consultant: String,
        leaf: String,
    },
    UnknownLabel {
        consultant: String,
        leaf: String,
        label: String,
    },
    DuplicateComment {
        consultant: String,
        leaf: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateId { id } => write!(f, "duplicate index id `{id}`"),
            SingleChildGroup { id } => write!(f, "group `{id}` has a single child"),
            MixedLeafDepth { depths } => write!(f, "leaves sit at mixed depths {depths:?}"),
            UnsupportedDepth { depth } => {
                write!(f, "leaf depth {depth} is not supported (expected 1 or 2)")
            }
            EmptyName { id } => write!(f, "index `{id}` has an empty name"),
            EmptyTree => write!(f, "index tree has no indexes"),
            ReservedId { id } => write!(f, "index id `{id}` is reserved for the root"),
            BadCommentSet { reason } => write!(f, "invalid comment set: {reason}"),
            MissingGroup { consultant, group } => {
                write!(f, "consultant `{consultant}`: no scores for group `{group}`")
            }
            UnknownGroup { consultant, group } => {
                write!(f, "consultant `{consultant}`: unknown group `{group}`")
            }
            MissingMember { consultant, group, member } => write!(
                f,
                "consultant `{consultant}`, group `{group}`: missing score for index `{member}`"
            ),
            ExtraMember { consultant, group, member } => write!(
                f,
                "consultant `{consultant}`, group `{group}`: index `{member}` is not a member"
            ),
            DuplicateScore { consultant, group, member } => write!(
                f,
                "consultant `{consultant}`, group `{group}`: index `{member}` scored twice"
            ),
            ScoreOutOfRange { consultant, group, member, score } => write!(
                f,
                "consultant `{consultant}`, group `{group}`: score {score} for index `{member}` outside [0, 10]"
            ),
            BudgetMismatch { consultant, group, sum, budget } => write!(
                f,
                "consultant `{consultant}`, group `{group}`: scores sum to {sum}, expected {budget}"
            ),
            DuplicateConsultant { consultant } => {
                write!(f, "consultant `{consultant}` submitted more than once")
            }
            IncompleteBallot { consultant, leaf } => {
                write!(f, "consultant `{consultant}`: ballot has no comment for index `{leaf}`")
            }
            UnknownLeaf { consultant, leaf } => {
                write!(f, "consultant `{consultant}`: `{leaf}` is not a leaf index")
            }
            UnknownLabel { consultant, leaf, label } => write!(
                f,
                "consultant `{consultant}`, index `{leaf}`: unknown comment label `{label}`"
            ),
            DuplicateComment { consultant, leaf } => {
                write!(f, "consultant `{consultant}`: index `{leaf}` commented twice")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.violations.iter()
    }

    pub fn into_result(self, context: impl Into<String>) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::invalid(context, self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a ValidationReport {
    type Item = &'a Violation;
    type IntoIter = std::slice::Iter<'a, Violation>;

    fn into_iter(self) -> Self::IntoIter {
        self.violations.iter()
    }
}
