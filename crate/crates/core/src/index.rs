//! The comment set and the hierarchical index system.
//!
//! An [`IndexTree`] is a synthetic root whose children are the primary
//! indexes. Primary indexes either are leaves themselves (one-level system)
//! or group secondary leaf indexes (two-level system). Feedback is always
//! collected at leaves; weights are elicited for the members of every group,
//! the root included.
//!
//! Child order is significant: it fixes the row order of every membership
//! matrix and the entry order of every weight vector downstream.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::validate::{ValidationReport, Violation};

/// Id of the synthetic root node. Weight sheets address the primary layer
/// through this id.
pub const ROOT_ID: &str = "root";

/// Ordered grade vocabulary, best grade first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCommentSet")]
pub struct CommentSet {
    labels: Vec<String>,
    grades: Vec<f64>,
}

#[derive(Deserialize)]
struct RawCommentSet {
    labels: Vec<String>,
    grades: Vec<f64>,
}

impl TryFrom<RawCommentSet> for CommentSet {
    type Error = Error;

    fn try_from(raw: RawCommentSet) -> Result<Self> {
        CommentSet::new(raw.labels, raw.grades)
    }
}

impl CommentSet {
    pub fn new<S: Into<String>>(labels: Vec<S>, grades: Vec<f64>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut report = ValidationReport::new();
        let mut bad = |reason: String| report.push(Violation::BadCommentSet { reason });

        if labels.len() != grades.len() {
            bad(format!(
                "{} labels but {} grades",
                labels.len(),
                grades.len()
            ));
        } else if labels.len() < 2 {
            bad("at least two grades are required".into());
        }
        if grades.iter().any(|g| !g.is_finite()) {
            bad("grades must be finite".into());
        }
        if grades.windows(2).any(|w| w[0] <= w[1]) {
            bad("grades must be strictly decreasing".into());
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if label.trim().is_empty() {
                bad("labels must be non-empty".into());
            } else if !seen.insert(label.as_str()) {
                bad(format!("label `{label}` appears twice"));
            }
        }
        report.into_result("comment set")?;
        Ok(Self { labels, grades })
    }

    /// Excellent, Good, Average, Fair, Poor graded 5 down to 1.
    pub fn five_level() -> Self {
        Self::new(
            vec!["Excellent", "Good", "Average", "Fair", "Poor"],
            vec![5.0, 4.0, 3.0, 2.0, 1.0],
        )
        .expect("five-level comment set is well formed")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn best_grade(&self) -> f64 {
        self.grades[0]
    }

    pub fn worst_grade(&self) -> f64 {
        self.grades[self.grades.len() - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexNode {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub explanation: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<IndexNode>,
}

impl IndexNode {
    pub fn leaf(id: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            name: name.into(),
            explanation: String::new(),
            children: Vec::new(),
        }
    }

    pub fn group(id: impl Into<String>, name: impl Into<String>, children: Vec<IndexNode>) -> Self {
        Self {
            children,
            ..Self::leaf(id, name)
        }
    }

    pub fn with_explanation(mut self, explanation: impl Into<String>) -> Self {
        self.explanation = explanation.into();
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn member_ids(&self) -> Vec<&str> {
        self.children.iter().map(|c| c.id.as_str()).collect()
    }

    fn walk<'a>(&'a self, depth: usize, visit: &mut impl FnMut(&'a IndexNode, usize)) {
        visit(self, depth);
        for child in &self.children {
            child.walk(depth + 1, visit);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexTree {
    pub root: IndexNode,
    pub comment_set: CommentSet,
}

impl IndexTree {
    /// Builds a tree from its primary indexes. The result is not validated;
    /// call [`IndexTree::validate`] or use [`IndexTree::validated`].
    pub fn new(primary: Vec<IndexNode>, comment_set: CommentSet) -> Self {
        Self {
            root: IndexNode::group(ROOT_ID, ROOT_ID, primary),
            comment_set,
        }
    }

    pub fn validated(primary: Vec<IndexNode>, comment_set: CommentSet) -> Result<Self> {
        let tree = Self::new(primary, comment_set);
        tree.validate().into_result("index tree")?;
        Ok(tree)
    }

    pub fn primary(&self) -> &[IndexNode] {
        &self.root.children
    }

    /// Checks the structural rules: unique ids, no single-child groups,
    /// uniform leaf depth of 1 or 2, non-empty names.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.root.children.is_empty() {
            report.push(Violation::EmptyTree);
            return report;
        }

        let mut seen: HashMap<&str, usize> = HashMap::new();
        let mut leaf_depths = BTreeSet::new();
        self.root.walk(0, &mut |node, depth| {
            if depth == 0 {
                if node.children.len() == 1 {
                    report.push(Violation::SingleChildGroup {
                        id: node.id.clone(),
                    });
                }
                return;
            }
            if node.id == ROOT_ID {
                report.push(Violation::ReservedId {
                    id: node.id.clone(),
                });
            }
            let count = seen.entry(node.id.as_str()).or_insert(0);
            *count += 1;
            if *count == 2 {
                report.push(Violation::DuplicateId {
                    id: node.id.clone(),
                });
            }
            if node.name.trim().is_empty() {
                report.push(Violation::EmptyName {
                    id: node.id.clone(),
                });
            }
            if node.children.len() == 1 {
                report.push(Violation::SingleChildGroup {
                    id: node.id.clone(),
                });
            }
            if node.is_leaf() {
                leaf_depths.insert(depth);
            }
        });

        if leaf_depths.len() > 1 {
            report.push(Violation::MixedLeafDepth {
                depths: leaf_depths.iter().copied().collect(),
            });
        }
        for &depth in &leaf_depths {
            if depth > 2 {
                report.push(Violation::UnsupportedDepth { depth });
            }
        }
        report
    }

    pub fn find(&self, id: &str) -> Option<&IndexNode> {
        let mut found = None;
        self.root.walk(0, &mut |node, _| {
            if found.is_none() && node.id == id {
                found = Some(node);
            }
        });
        found
    }

    /// Members of a group in declaration order.
    pub fn leaves_of(&self, group_id: &str) -> Result<&[IndexNode]> {
        let node = self
            .find(group_id)
            .ok_or_else(|| Error::UnknownIndex(group_id.to_string()))?;
        if node.is_leaf() {
            return Err(Error::NotAGroup(group_id.to_string()));
        }
        Ok(&node.children)
    }

    /// Every node with children, root first, in pre-order.
    pub fn groups(&self) -> Vec<&IndexNode> {
        let mut out = Vec::new();
        self.root.walk(0, &mut |node, _| {
            if !node.is_leaf() {
                out.push(node);
            }
        });
        out
    }

    /// Groups whose members are leaves: the groups that own a membership matrix.
    pub fn leaf_groups(&self) -> Vec<&IndexNode> {
        self.groups()
            .into_iter()
            .filter(|g| g.children.iter().all(IndexNode::is_leaf))
            .collect()
    }

    /// Leaves in pre-order, which is the concatenation of every leaf group's
    /// member order.
    pub fn leaves(&self) -> Vec<&IndexNode> {
        let mut out = Vec::new();
        self.root.walk(0, &mut |node, depth| {
            if depth > 0 && node.is_leaf() {
                out.push(node);
            }
        });
        out
    }

    pub fn is_leaf_id(&self, id: &str) -> bool {
        self.find(id)
            .is_some_and(|n| n.is_leaf() && n.id != ROOT_ID)
    }
}
