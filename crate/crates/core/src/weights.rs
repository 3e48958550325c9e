//! Weight elicitation by direct scoring.
//!
//! Each consultant distributes a budget of 10 points over the members of
//! every group (the root's primary indexes and each group's secondary
//! indexes), with each score in [0, 10]. A group's weight vector is the
//! per-member mean over the valid sheets, divided by the sum of those means.

use std::collections::BTreeMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::IndexTree;
use crate::policy::Submission;
use crate::validate::{ValidationReport, Violation};

pub const GROUP_BUDGET: f64 = 10.0;
pub const BUDGET_TOLERANCE: f64 = 1e-9;
pub const MIN_SCORE: f64 = 0.0;
pub const MAX_SCORE: f64 = 10.0;

/// Raw scores from one consultant: group id -> member id -> score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSheet {
    pub consultant_id: String,
    pub group_scores: BTreeMap<String, BTreeMap<String, f64>>,
}

impl WeightSheet {
    pub fn new(consultant_id: impl Into<String>) -> Self {
        Self {
            consultant_id: consultant_id.into(),
            group_scores: BTreeMap::new(),
        }
    }

    /// Sets the scores of one group, pairing `members` with `scores` in order.
    pub fn with_group<S: AsRef<str>>(mut self, group: &str, members: &[S], scores: &[f64]) -> Self {
        let entry = self.group_scores.entry(group.to_string()).or_default();
        for (m, s) in members.iter().zip(scores) {
            entry.insert(m.as_ref().to_string(), *s);
        }
        self
    }

    pub fn score(&self, group: &str, member: &str) -> Option<f64> {
        self.group_scores.get(group)?.get(member).copied()
    }
}

impl Submission for WeightSheet {
    fn consultant_id(&self) -> &str {
        &self.consultant_id
    }
}

/// Averaged and normalized weights for the members of one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub group_id: String,
    pub member_ids: Vec<String>,
    pub averages: Vec<f64>,
    pub normalized: Vec<f64>,
}

impl WeightVector {
    /// Builds a vector directly from already-normalized weights; averages are
    /// set equal to the weights.
    pub fn from_normalized<S: Into<String>>(
        group_id: impl Into<String>,
        member_ids: Vec<S>,
        normalized: Vec<f64>,
    ) -> Self {
        Self {
            group_id: group_id.into(),
            member_ids: member_ids.into_iter().map(Into::into).collect(),
            averages: normalized.clone(),
            normalized,
        }
    }

    /// Normalizes `averages` by their sum.
    pub fn from_averages<S: Into<String>>(
        group_id: impl Into<String>,
        member_ids: Vec<S>,
        averages: Vec<f64>,
    ) -> Result<Self> {
        let group_id = group_id.into();
        let total: f64 = averages.iter().sum();
        if total.is_nan() || total <= 0.0 || !total.is_finite() {
            return Err(Error::ZeroTotalWeight(group_id));
        }
        let normalized = averages.iter().map(|a| a / total).collect();
        Ok(Self {
            group_id,
            member_ids: member_ids.into_iter().map(Into::into).collect(),
            averages,
            normalized,
        })
    }

    pub fn len(&self) -> usize {
        self.normalized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normalized.is_empty()
    }

    pub fn weight_of(&self, member: &str) -> Option<f64> {
        let i = self.member_ids.iter().position(|m| m == member)?;
        Some(self.normalized[i])
    }
}

/// Checks one sheet against the tree: completeness, range, and the per-group
/// budget.
pub fn validate_sheet(sheet: &WeightSheet, tree: &IndexTree) -> ValidationReport {
    let mut report = ValidationReport::new();
    let consultant = &sheet.consultant_id;
    let groups = tree.groups();

    for group in &groups {
        let Some(scores) = sheet.group_scores.get(&group.id) else {
            report.push(Violation::MissingGroup {
                consultant: consultant.clone(),
                group: group.id.clone(),
            });
            continue;
        };
        for member in &group.children {
            if !scores.contains_key(&member.id) {
                report.push(Violation::MissingMember {
                    consultant: consultant.clone(),
                    group: group.id.clone(),
                    member: member.id.clone(),
                });
            }
        }
        for (member, &score) in scores {
            if !group.children.iter().any(|c| &c.id == member) {
                report.push(Violation::ExtraMember {
                    consultant: consultant.clone(),
                    group: group.id.clone(),
                    member: member.clone(),
                });
            }
            if !(MIN_SCORE..=MAX_SCORE).contains(&score) {
                report.push(Violation::ScoreOutOfRange {
                    consultant: consultant.clone(),
                    group: group.id.clone(),
                    member: member.clone(),
                    score,
                });
            }
        }
        let sum: f64 = scores.values().sum();
        if (sum - GROUP_BUDGET).abs().is_nan() || (sum - GROUP_BUDGET).abs() > BUDGET_TOLERANCE {
            report.push(Violation::BudgetMismatch {
                consultant: consultant.clone(),
                group: group.id.clone(),
                sum,
                budget: GROUP_BUDGET,
            });
        }
    }
    for group in sheet.group_scores.keys() {
        if !groups.iter().any(|g| &g.id == group) {
            report.push(Violation::UnknownGroup {
                consultant: consultant.clone(),
                group: group.clone(),
            });
        }
    }
    report
}

/// Validates every sheet and flags consultants that appear more than once.
pub fn validate_sheets(sheets: &[WeightSheet], tree: &IndexTree) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut seen = BTreeMap::new();
    for sheet in sheets {
        let count = seen.entry(sheet.consultant_id.as_str()).or_insert(0);
        *count += 1;
        if *count == 2 {
            report.push(Violation::DuplicateConsultant {
                consultant: sheet.consultant_id.clone(),
            });
        }
        report.extend(validate_sheet(sheet, tree));
    }
    report
}

/// Averages the valid sheets per group and normalizes.
///
/// Scores for a member are summed in ascending order so the result does not
/// depend on the order of `valid_sheets`.
pub fn aggregate_weights(
    valid_sheets: &[WeightSheet],
    tree: &IndexTree,
) -> Result<IndexMap<String, WeightVector>> {
    if valid_sheets.is_empty() {
        return Err(Error::NoSubmissions);
    }
    let count = valid_sheets.len() as f64;
    let mut out = IndexMap::new();
    for group in tree.groups() {
        let mut averages = Vec::with_capacity(group.children.len());
        for member in &group.children {
            let mut scores = Vec::with_capacity(valid_sheets.len());
            for sheet in valid_sheets {
                let score = sheet.score(&group.id, &member.id).ok_or_else(|| {
                    let mut report = ValidationReport::new();
                    report.push(Violation::MissingMember {
                        consultant: sheet.consultant_id.clone(),
                        group: group.id.clone(),
                        member: member.id.clone(),
                    });
                    Error::invalid("weight sheets", report)
                })?;
                scores.push(score);
            }
            scores.sort_by(f64::total_cmp);
            averages.push(scores.iter().sum::<f64>() / count);
        }
        let vector = WeightVector::from_averages(group.id.clone(), group.member_ids(), averages)?;
        out.insert(group.id.clone(), vector);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{CommentSet, IndexNode, ROOT_ID};

    fn two_group_tree() -> IndexTree {
        IndexTree::new(
            vec![
                IndexNode::group(
                    "u1",
                    "One",
                    vec![IndexNode::leaf("u11", "a"), IndexNode::leaf("u12", "b")],
                ),
                IndexNode::group(
                    "u2",
                    "Two",
                    (1..=5)
                        .map(|i| IndexNode::leaf(format!("u2{i}"), "x"))
                        .collect(),
                ),
            ],
            CommentSet::five_level(),
        )
    }

    fn sheet(id: &str, root: [f64; 2], u1: [f64; 2], u2: [f64; 5]) -> WeightSheet {
        WeightSheet::new(id)
            .with_group(ROOT_ID, &["u1", "u2"], &root)
            .with_group("u1", &["u11", "u12"], &u1)
            .with_group("u2", &["u21", "u22", "u23", "u24", "u25"], &u2)
    }

    #[test]
    fn valid_sheet_passes() {
        let s = sheet("c1", [4.0, 6.0], [5.0, 5.0], [2.0; 5]);
        assert!(validate_sheet(&s, &two_group_tree()).is_valid());
    }

    #[test]
    fn budget_and_range_violations() {
        let s = sheet("c1", [5.0, 6.0], [11.0, -1.0], [2.0; 5]);
        let report = validate_sheet(&s, &two_group_tree());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::BudgetMismatch { group, sum, .. } if group == ROOT_ID && *sum == 11.0
        )));
        assert_eq!(
            report
                .iter()
                .filter(|v| matches!(v, Violation::ScoreOutOfRange { .. }))
                .count(),
            2
        );
    }

    #[test]
    fn missing_and_extra_members() {
        let mut s = sheet("c9", [4.0, 6.0], [5.0, 5.0], [2.0; 5]);
        s.group_scores.get_mut("u2").unwrap().remove("u25");
        s.group_scores
            .get_mut("u1")
            .unwrap()
            .insert("u99".into(), 0.0);
        let report = validate_sheet(&s, &two_group_tree());
        assert!(report.violations.contains(&Violation::MissingMember {
            consultant: "c9".into(),
            group: "u2".into(),
            member: "u25".into()
        }));
        assert!(report.violations.contains(&Violation::ExtraMember {
            consultant: "c9".into(),
            group: "u1".into(),
            member: "u99".into()
        }));
    }

    #[test]
    fn uniform_scores_give_uniform_weights() {
        let s = sheet("c1", [5.0, 5.0], [5.0, 5.0], [2.0; 5]);
        let w = aggregate_weights(&[s], &two_group_tree()).unwrap();
        assert_eq!(w["u2"].normalized, vec![0.2; 5]);
        assert_eq!(w[ROOT_ID].normalized, vec![0.5, 0.5]);
    }

    #[test]
    fn averages_then_normalizes() {
        let tree = two_group_tree();
        let u1 = [[5.0, 5.0], [5.0, 5.0], [5.0, 5.0], [4.0, 6.0], [4.0, 6.0]];
        let sheets: Vec<_> = u1
            .iter()
            .enumerate()
            .map(|(i, s)| sheet(&format!("c{i}"), [5.0, 5.0], *s, [2.0; 5]))
            .collect();
        let w = aggregate_weights(&sheets, &tree).unwrap();
        let v = &w["u1"];
        assert_eq!(v.member_ids, ["u11", "u12"]);
        assert!((v.averages[0] - 4.6).abs() < 1e-12);
        assert!((v.averages[1] - 5.4).abs() < 1e-12);
        assert!((v.normalized[0] - 0.46).abs() < 1e-12);
        assert!((v.normalized[1] - 0.54).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            aggregate_weights(&[], &two_group_tree()),
            Err(Error::NoSubmissions)
        ));
    }

    #[test]
    fn all_zero_group_is_an_error() {
        let s = sheet("c1", [5.0, 5.0], [0.0, 0.0], [2.0; 5]);
        assert!(matches!(
            aggregate_weights(&[s], &two_group_tree()),
            Err(Error::ZeroTotalWeight(g)) if g == "u1"
        ));
    }
}
