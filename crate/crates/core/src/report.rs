//! Evaluation reports.
//!
//! A [`ReportDocument`] holds everything needed to audit a verdict: input
//! digests, selection policies and the selected consultants, every weight
//! vector and matrix, every composed vector, and the verdict. It serializes
//! to JSON deterministically and renders to plain text on its own, so a saved
//! report can be re-rendered without the original inputs.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::compose::{CompositionOperator, EvaluationVector, TreeEvaluation};
use crate::decision::Verdict;
use crate::error::{Error, Result};
use crate::index::{CommentSet, IndexTree, ROOT_ID};
use crate::membership::MembershipMatrix;
use crate::pipeline::EvaluationSettings;
use crate::policy::ValidSubsetPolicy;
use crate::weights::WeightVector;

pub const REPORT_FORMAT: &str = "fuzzy-eval-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigests {
    pub tree_sha256: String,
    pub weight_sheets_sha256: String,
    pub ballots_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionRecord {
    pub policy: ValidSubsetPolicy,
    pub submitted: usize,
    pub selected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub inputs: InputDigests,
    pub weight_sheets: SelectionRecord,
    pub ballots: SelectionRecord,
    /// Valid ballot count used as the membership denominator.
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub id: String,
    pub name: String,
    pub members: Vec<MemberRecord>,
    pub weights: WeightVector,
    /// Leaf memberships, or the stacked member vectors for upper groups.
    pub matrix: MembershipMatrix,
    pub vector: EvaluationVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub winning_label: String,
    pub winning_value: f64,
    pub tied_labels: Vec<String>,
    pub weighted_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub comment_set: CommentSet,
    pub operator: CompositionOperator,
    pub tie_epsilon: f64,
    pub provenance: Provenance,
    /// Root first, then every other group in tree pre-order.
    pub groups: Vec<GroupRecord>,
    pub final_vector: EvaluationVector,
    pub verdict: VerdictRecord,
}

/// Assembles the report for one evaluation run.
pub fn render_report(
    verdict: &Verdict,
    tree: &IndexTree,
    weights: &IndexMap<String, WeightVector>,
    matrices: &IndexMap<String, MembershipMatrix>,
    evaluation: &TreeEvaluation,
    settings: &EvaluationSettings,
    provenance: &Provenance,
) -> ReportDocument {
    let mut groups = Vec::new();
    for group in tree.groups() {
        let Some(w) = weights.get(&group.id) else {
            continue;
        };
        let vector = if group.id == ROOT_ID {
            Some(&evaluation.final_vector)
        } else {
            verdict
                .per_group
                .get(&group.id)
                .or_else(|| evaluation.per_group.get(&group.id))
        };
        let matrix = match matrices.get(&group.id) {
            Some(m) => Some(m.clone()),
            None if group.id == ROOT_ID => evaluation.upper_matrix.clone(),
            None => {
                let rows: Option<Vec<Vec<f64>>> = group
                    .children
                    .iter()
                    .map(|c| evaluation.per_group.get(&c.id).map(|v| v.values.clone()))
                    .collect();
                rows.map(|rows| MembershipMatrix::new(group.id.clone(), group.member_ids(), rows))
            }
        };
        let (Some(vector), Some(matrix)) = (vector, matrix) else {
            continue;
        };
        groups.push(GroupRecord {
            id: group.id.clone(),
            name: group.name.clone(),
            members: group
                .children
                .iter()
                .map(|c| MemberRecord {
                    id: c.id.clone(),
                    name: c.name.clone(),
                })
                .collect(),
            weights: w.clone(),
            matrix,
            vector: vector.clone(),
        });
    }

    ReportDocument {
        format: REPORT_FORMAT.to_string(),
        comment_set: tree.comment_set.clone(),
        operator: settings.operator,
        tie_epsilon: settings.tie_epsilon,
        provenance: provenance.clone(),
        groups,
        final_vector: evaluation.final_vector.clone(),
        verdict: VerdictRecord {
            winning_label: verdict.winning_label.clone(),
            winning_value: verdict.winning_value,
            tied_labels: verdict.tied_labels.clone(),
            weighted_score: verdict.weighted_score,
        },
    }
}

impl ReportDocument {
    /// Pretty JSON with a trailing newline. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReportDocument =
            serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
        if doc.format != REPORT_FORMAT {
            return Err(Error::Report(format!(
                "unsupported format `{}` (expected `{REPORT_FORMAT}`)",
                doc.format
            )));
        }
        Ok(doc)
    }

    pub fn group(&self, id: &str) -> Option<&GroupRecord> {
        self.groups.iter().find(|g| g.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels = self.comment_set.labels();
        let title = "Fuzzy comprehensive evaluation report";
        let _ = writeln!(out, "{title}\n{}\n", "=".repeat(title.len()));

        let grades: Vec<String> = labels
            .iter()
            .zip(self.comment_set.grades())
            .map(|(l, g)| format!("{l} ({})", num(*g)))
            .collect();
        let _ = writeln!(out, "Comment set:  {}", grades.join(", "));
        let _ = writeln!(out, "Operator:     {}", self.operator);
        let _ = writeln!(out, "Tie epsilon:  {:e}", self.tie_epsilon);

        let p = &self.provenance;
        let _ = writeln!(out, "\nInputs");
        let _ = writeln!(out, "  tree           sha256 {}", p.inputs.tree_sha256);
        let _ = writeln!(
            out,
            "  weight sheets  sha256 {}",
            p.inputs.weight_sheets_sha256
        );
        let _ = writeln!(out, "  ballots        sha256 {}", p.inputs.ballots_sha256);
        for (what, rec) in [("Weight sheets", &p.weight_sheets), ("Ballots", &p.ballots)] {
            let _ = write!(
                out,
                "  {what}: {} of {} valid (policy {}",
                rec.selected.len(),
                rec.submitted,
                rec.policy
            );
            if rec.policy.k.is_some() {
                let _ = write!(out, ", seed {}", rec.policy.seed);
            }
            let _ = writeln!(out, "): {}", rec.selected.join(", "));
        }
        let _ = writeln!(out, "  n = {}", p.n);

        let width = self
            .groups
            .iter()
            .flat_map(|g| g.members.iter().map(|m| m.id.len()))
            .max()
            .unwrap_or(4)
            .max(4);
        let header: String = labels.iter().map(|l| format!(" {l:>10}")).collect();
        let ordered = self
            .groups
            .iter()
            .filter(|g| g.id != ROOT_ID)
            .chain(self.groups.iter().filter(|g| g.id == ROOT_ID));
        for group in ordered {
            let title = if group.id == ROOT_ID {
                "Primary layer".to_string()
            } else {
                format!("Group {} ({})", group.id, group.name)
            };
            let _ = writeln!(out, "\n{title}");
            let _ = writeln!(out, "  {:<width$} {:>8}{header}", "index", "weight");
            for (i, member) in group.members.iter().enumerate() {
                let weight = group.weights.normalized.get(i).copied().unwrap_or(f64::NAN);
                let row = group
                    .matrix
                    .entries
                    .get(i)
                    .map(Vec::as_slice)
                    .unwrap_or(&[]);
                let cells: String = row.iter().map(|v| format!(" {:>10}", num(*v))).collect();
                let _ = writeln!(out, "  {:<width$} {:>8}{cells}", member.id, num(weight));
            }
            let name = if group.id == ROOT_ID { "B" } else { "b" };
            let _ = writeln!(out, "  {name} = {}", vector_text(&group.vector.values));
            if let Some(raw) = &group.vector.unnormalized {
                let _ = writeln!(out, "  before renormalization: {}", vector_text(raw));
            }
        }

        let _ = writeln!(
            out,
            "\nFinal vector B = {}",
            vector_text(&self.final_vector.values)
        );
        let v = &self.verdict;
        let grade = self
            .comment_set
            .position(&v.winning_label)
            .map(|j| num(self.comment_set.grades()[j]))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "Verdict: {} (grade {grade}), maximum membership {}",
            v.winning_label,
            num(v.winning_value)
        );
        let _ = writeln!(out, "Weighted score (auxiliary): {}", num(v.weighted_score));
        if v.tied_labels.len() > 1 {
            let _ = writeln!(
                out,
                "\nWarning: tie within {:e} of the maximum between {}",
                self.tie_epsilon,
                v.tied_labels.join(", ")
            );
        }
        out
    }
}

/// Up to six decimals, trailing zeros dropped.
fn num(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn vector_text(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| num(*v)).collect();
    format!("({})", parts.join(", "))
}
