//! Hierarchical fuzzy comprehensive evaluation.
//!
//! The pipeline runs over an [`IndexTree`] of primary and secondary indexes
//! graded on an ordered [`CommentSet`]:
//!
//! 1. consultants' [`WeightSheet`]s are averaged and normalized into one
//!    [`WeightVector`] per group ([`weights`]);
//! 2. graded [`FeedbackBallot`]s are tallied into row-stochastic
//!    [`MembershipMatrix`]es, `M_ij = m_ij / n` ([`membership`]);
//! 3. each group's vector `b_i = a_i · r_i` is composed, the `b_i` are
//!    stacked and composed with the primary weights into `B` ([`compose`]);
//! 4. the grade with the largest membership in `B` is the [`Verdict`]
//!    ([`decision`]), and a [`ReportDocument`] records the run ([`report`]).
//!
//! [`pipeline::evaluate`] runs every step on in-memory inputs;
//! [`pipeline::run_pipeline`] does the same from files.

pub mod compose;
pub mod decision;
pub mod error;
pub mod fixtures;
pub mod index;
pub mod io;
pub mod membership;
pub mod pipeline;
pub mod policy;
pub mod report;
pub mod validate;
pub mod weights;

pub use compose::{
    compose, effective_leaf_weights, evaluate_tree, flatten, CompositionOperator, EvaluationVector,
    TreeEvaluation,
};
pub use decision::{decide, weighted_score, Verdict, DEFAULT_TIE_EPSILON};
pub use error::{Error, Result, Stage};
pub use index::{CommentSet, IndexNode, IndexTree, ROOT_ID};
pub use membership::{
    build_matrices, build_matrix, membership_from_tally, tally_ballots, validate_ballot,
    validate_ballots, FeedbackBallot, FeedbackTally, MembershipMatrix,
};
pub use pipeline::{evaluate, run_pipeline, EvaluationSettings, Outcome, ProjectBundle};
pub use policy::{select_valid, SelectionMode, Submission, ValidSubsetPolicy};
pub use report::{render_report, ReportDocument};
pub use validate::{ValidationReport, Violation};
pub use weights::{aggregate_weights, validate_sheet, validate_sheets, WeightSheet, WeightVector};
