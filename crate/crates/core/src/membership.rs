//! Membership degrees from graded ballots.
//!
//! A leaf's membership in grade `j` is the fraction of valid ballots that
//! gave it grade `j`. Counts are kept as integers so that each row is an
//! exact distribution until the final division.

use std::collections::BTreeMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::IndexTree;
use crate::policy::{select_valid, Submission, ValidSubsetPolicy};
use crate::validate::{ValidationReport, Violation};

/// One consultant's grades: leaf id -> comment label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeedbackBallot {
    pub consultant_id: String,
    pub comments: BTreeMap<String, String>,
}

impl FeedbackBallot {
    pub fn new(consultant_id: impl Into<String>) -> Self {
        Self {
            consultant_id: consultant_id.into(),
            comments: BTreeMap::new(),
        }
    }

    pub fn with(mut self, leaf: impl Into<String>, label: impl Into<String>) -> Self {
        self.comments.insert(leaf.into(), label.into());
        self
    }
}

impl Submission for FeedbackBallot {
    fn consultant_id(&self) -> &str {
        &self.consultant_id
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeedbackTally {
    pub leaf_id: String,
    /// One count per comment label, best grade first.
    pub counts: Vec<u32>,
    pub n: u32,
}

impl FeedbackTally {
    /// Membership degrees `counts[j] / n`.
    pub fn membership(&self) -> Result<Vec<f64>> {
        membership_from_tally(self)
    }
}

/// Row-stochastic matrix: one row per member, one column per comment label.
///
/// Also used for the stacked group vectors at the upper level, where rows are
/// primary indexes rather than leaves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipMatrix {
    pub group_id: String,
    pub row_ids: Vec<String>,
    pub entries: Vec<Vec<f64>>,
}

impl MembershipMatrix {
    pub fn new<S: Into<String>>(
        group_id: impl Into<String>,
        row_ids: Vec<S>,
        entries: Vec<Vec<f64>>,
    ) -> Self {
        Self {
            group_id: group_id.into(),
            row_ids: row_ids.into_iter().map(Into::into).collect(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn columns(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn row(&self, id: &str) -> Option<&[f64]> {
        let i = self.row_ids.iter().position(|r| r == id)?;
        Some(&self.entries[i])
    }

    /// Largest absolute deviation of a row sum from 1.
    pub fn max_row_sum_error(&self) -> f64 {
        self.entries
            .iter()
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Checks that a ballot grades every leaf exactly once with a known label.
pub fn validate_ballot(ballot: &FeedbackBallot, tree: &IndexTree) -> ValidationReport {
    let mut report = ValidationReport::new();
    let consultant = &ballot.consultant_id;
    for leaf in tree.leaves() {
        if !ballot.comments.contains_key(&leaf.id) {
            report.push(Violation::IncompleteBallot {
                consultant: consultant.clone(),
                leaf: leaf.id.clone(),
            });
        }
    }
    for (leaf, label) in &ballot.comments {
        if !tree.is_leaf_id(leaf) {
            report.push(Violation::UnknownLeaf {
                consultant: consultant.clone(),
                leaf: leaf.clone(),
            });
        } else if tree.comment_set.position(label).is_none() {
            report.push(Violation::UnknownLabel {
                consultant: consultant.clone(),
                leaf: leaf.clone(),
                label: label.clone(),
            });
        }
    }
    report
}

pub fn validate_ballots(ballots: &[FeedbackBallot], tree: &IndexTree) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut seen = BTreeMap::new();
    for ballot in ballots {
        let count = seen.entry(ballot.consultant_id.as_str()).or_insert(0);
        *count += 1;
        if *count == 2 {
            report.push(Violation::DuplicateConsultant {
                consultant: ballot.consultant_id.clone(),
            });
        }
        report.extend(validate_ballot(ballot, tree));
    }
    report
}

/// Selects the valid ballots under `policy` and counts grades per leaf.
/// One subset is drawn for all leaves, so `n` is the same everywhere.
pub fn tally_ballots(
    ballots: &[FeedbackBallot],
    tree: &IndexTree,
    policy: &ValidSubsetPolicy,
) -> Result<IndexMap<String, FeedbackTally>> {
    if ballots.is_empty() {
        return Err(Error::NoSubmissions);
    }
    let valid = select_valid(ballots, policy)?;
    let mut report = ValidationReport::new();
    for ballot in &valid {
        report.extend(validate_ballot(ballot, tree));
    }
    report.into_result("ballots")?;

    let grades = tree.comment_set.len();
    let n = valid.len() as u32;
    let mut tallies = IndexMap::new();
    for leaf in tree.leaves() {
        let mut counts = vec![0u32; grades];
        for ballot in &valid {
            let label = &ballot.comments[&leaf.id];
            // validated above
            let j = tree.comment_set.position(label).unwrap();
            counts[j] += 1;
        }
        tallies.insert(
            leaf.id.clone(),
            FeedbackTally {
                leaf_id: leaf.id.clone(),
                counts,
                n,
            },
        );
    }
    Ok(tallies)
}

pub fn membership_from_tally(tally: &FeedbackTally) -> Result<Vec<f64>> {
    if tally.n == 0 {
        return Err(Error::EmptyTally(tally.leaf_id.clone()));
    }
    let total: u64 = tally.counts.iter().map(|&c| u64::from(c)).sum();
    if total != u64::from(tally.n) {
        return Err(Error::TallyMismatch {
            leaf: tally.leaf_id.clone(),
            total,
            n: tally.n,
        });
    }
    let n = f64::from(tally.n);
    Ok(tally.counts.iter().map(|&c| f64::from(c) / n).collect())
}

/// Stacks the membership rows of a group's members in declaration order.
pub fn build_matrix(
    group_id: &str,
    tallies: &IndexMap<String, FeedbackTally>,
    tree: &IndexTree,
) -> Result<MembershipMatrix> {
    let members = tree.leaves_of(group_id)?;
    let mut row_ids = Vec::with_capacity(members.len());
    let mut entries = Vec::with_capacity(members.len());
    for member in members {
        let tally = tallies.get(&member.id).ok_or_else(|| Error::MissingTally {
            group: group_id.to_string(),
            leaf: member.id.clone(),
        })?;
        row_ids.push(member.id.clone());
        entries.push(membership_from_tally(tally)?);
    }
    Ok(MembershipMatrix::new(group_id, row_ids, entries))
}

/// Builds the matrix of every leaf group, in tree order.
pub fn build_matrices(
    tallies: &IndexMap<String, FeedbackTally>,
    tree: &IndexTree,
) -> Result<IndexMap<String, MembershipMatrix>> {
    tree.leaf_groups()
        .into_iter()
        .map(|g| Ok((g.id.clone(), build_matrix(&g.id, tallies, tree)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{CommentSet, IndexNode};

    fn tree() -> IndexTree {
        IndexTree::new(
            vec![
                IndexNode::group(
                    "u1",
                    "One",
                    vec![IndexNode::leaf("u11", "a"), IndexNode::leaf("u12", "b")],
                ),
                IndexNode::group(
                    "u8",
                    "Eight",
                    vec![IndexNode::leaf("u81", "c"), IndexNode::leaf("u82", "d")],
                ),
            ],
            CommentSet::five_level(),
        )
    }

    fn tally(leaf: &str, counts: [u32; 5]) -> FeedbackTally {
        FeedbackTally {
            leaf_id: leaf.into(),
            counts: counts.to_vec(),
            n: counts.iter().sum(),
        }
    }

    #[test]
    fn membership_is_count_over_n() {
        assert_eq!(
            membership_from_tally(&tally("u11", [7, 2, 1, 0, 0])).unwrap(),
            vec![0.7, 0.2, 0.1, 0.0, 0.0]
        );
        assert_eq!(
            membership_from_tally(&tally("u21", [9, 1, 0, 0, 0])).unwrap(),
            vec![0.9, 0.1, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            membership_from_tally(&tally("x", [0, 0, 0, 0, 4])).unwrap(),
            vec![0.0, 0.0, 0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn zero_n_is_rejected() {
        let t = FeedbackTally {
            leaf_id: "x".into(),
            counts: vec![0; 5],
            n: 0,
        };
        assert!(matches!(
            membership_from_tally(&t),
            Err(Error::EmptyTally(_))
        ));
    }

    #[test]
    fn inconsistent_counts_are_rejected() {
        let t = FeedbackTally {
            leaf_id: "x".into(),
            counts: vec![1, 1, 0, 0, 0],
            n: 3,
        };
        assert!(membership_from_tally(&t).is_err());
    }

    #[test]
    fn tallies_count_labels() {
        let tree = tree();
        let labels = [
            "Excellent",
            "Excellent",
            "Excellent",
            "Excellent",
            "Excellent",
            "Excellent",
            "Excellent",
            "Good",
            "Good",
            "Average",
        ];
        let ballots: Vec<_> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                FeedbackBallot::new(format!("c{i:02}"))
                    .with("u11", *l)
                    .with("u12", "Good")
                    .with("u81", "Poor")
                    .with("u82", "Fair")
            })
            .collect();
        let t = tally_ballots(&ballots, &tree, &ValidSubsetPolicy::all()).unwrap();
        assert_eq!(t["u11"].counts, vec![7, 2, 1, 0, 0]);
        assert_eq!(t["u11"].n, 10);
        assert_eq!(t["u81"].counts, vec![0, 0, 0, 0, 10]);
        let keys: Vec<_> = t.keys().cloned().collect();
        assert_eq!(keys, ["u11", "u12", "u81", "u82"]);
    }

    #[test]
    fn single_ballot() {
        let tree = tree();
        let b = FeedbackBallot::new("c")
            .with("u11", "Poor")
            .with("u12", "Poor")
            .with("u81", "Poor")
            .with("u82", "Poor");
        let t = tally_ballots(&[b], &tree, &ValidSubsetPolicy::all()).unwrap();
        assert!(t.values().all(|t| t.counts == [0, 0, 0, 0, 1] && t.n == 1));
    }

    #[test]
    fn bad_ballots_are_rejected() {
        let tree = tree();
        let incomplete = FeedbackBallot::new("c7").with("u11", "Good");
        let report = validate_ballot(&incomplete, &tree);
        assert_eq!(report.len(), 3);
        let superb = FeedbackBallot::new("c1")
            .with("u11", "Superb")
            .with("u12", "Good")
            .with("u81", "Good")
            .with("u82", "Good");
        let err = tally_ballots(&[superb], &tree, &ValidSubsetPolicy::all()).unwrap_err();
        assert!(err.to_string().contains("Superb"));
        assert!(matches!(
            tally_ballots(&[], &tree, &ValidSubsetPolicy::all()),
            Err(Error::NoSubmissions)
        ));
    }

    #[test]
    fn matrix_rows_follow_tree_order() {
        let tree = tree();
        let mut tallies = IndexMap::new();
        tallies.insert("u82".to_string(), tally("u82", [9, 1, 0, 0, 0]));
        tallies.insert("u81".to_string(), tally("u81", [8, 1, 1, 0, 0]));
        let m = build_matrix("u8", &tallies, &tree).unwrap();
        assert_eq!(m.row_ids, ["u81", "u82"]);
        assert_eq!(
            m.entries,
            vec![vec![0.8, 0.1, 0.1, 0.0, 0.0], vec![0.9, 0.1, 0.0, 0.0, 0.0]]
        );
        assert!(m.max_row_sum_error() < 1e-12);

        let err = build_matrix("u1", &tallies, &tree).unwrap_err();
        assert!(matches!(err, Error::MissingTally { leaf, .. } if leaf == "u11"));
    }
}
