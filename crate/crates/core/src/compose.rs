//! Level-wise fuzzy composition.
//!
//! Each leaf group's weights are composed with its membership matrix to give
//! the group's evaluation vector. The group vectors are stacked, in the
//! root's child order, into the upper-level matrix which is composed with the
//! primary weights to give the final vector.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{IndexNode, IndexTree, ROOT_ID};
use crate::membership::MembershipMatrix;
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationVector {
    pub subject_id: String,
    pub values: Vec<f64>,
    /// Max-min output before renormalization. Absent for the weighted average.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unnormalized: Option<Vec<f64>>,
}

impl EvaluationVector {
    pub fn new(subject_id: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            subject_id: subject_id.into(),
            values,
            unnormalized: None,
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionOperator {
    /// `b_j = Σ_k w_k · r_kj`, the ordinary vector-matrix product.
    #[default]
    WeightedAverage,
    /// `b_j = max_k min(w_k, r_kj)`, renormalized to sum 1.
    MaxMin,
}

impl fmt::Display for CompositionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompositionOperator::WeightedAverage => "weighted-average",
            CompositionOperator::MaxMin => "max-min",
        })
    }
}

impl FromStr for CompositionOperator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "weighted-average" | "weighted" | "M(.,+)" => Ok(Self::WeightedAverage),
            "max-min" | "maxmin" | "M(^,v)" => Ok(Self::MaxMin),
            other => Err(format!(
                "unknown operator `{other}` (expected `weighted-average` or `max-min`)"
            )),
        }
    }
}

/// Composes `weights` with `matrix`. Members are aligned by id; a weight
/// vector whose member order differs from the matrix rows is rejected.
pub fn compose(
    weights: &WeightVector,
    matrix: &MembershipMatrix,
    op: CompositionOperator,
) -> Result<EvaluationVector> {
    let subject = matrix.group_id.clone();
    if weights.normalized.len() != matrix.rows() || matrix.row_ids.len() != matrix.rows() {
        return Err(Error::DimensionMismatch {
            subject,
            left: weights.normalized.len(),
            right: matrix.rows(),
        });
    }
    for (w, r) in weights.member_ids.iter().zip(&matrix.row_ids) {
        if w != r {
            return Err(Error::MisalignedMembers {
                subject,
                weight_id: w.clone(),
                row_id: r.clone(),
            });
        }
    }
    let columns = matrix.columns();
    if matrix.entries.iter().any(|row| row.len() != columns) {
        return Err(Error::DimensionMismatch {
            subject,
            left: columns,
            right: matrix.entries.iter().map(Vec::len).max().unwrap_or(0),
        });
    }

    match op {
        CompositionOperator::WeightedAverage => {
            let mut values = vec![0.0; columns];
            for (w, row) in weights.normalized.iter().zip(&matrix.entries) {
                for (acc, r) in values.iter_mut().zip(row) {
                    *acc += w * r;
                }
            }
            Ok(EvaluationVector::new(subject, values))
        }
        CompositionOperator::MaxMin => {
            let mut raw = vec![0.0f64; columns];
            for (w, row) in weights.normalized.iter().zip(&matrix.entries) {
                for (acc, r) in raw.iter_mut().zip(row) {
                    *acc = acc.max(w.min(*r));
                }
            }
            let total: f64 = raw.iter().sum();
            if total.is_nan() || total <= 0.0 {
                return Err(Error::DegenerateComposition(subject));
            }
            Ok(EvaluationVector {
                subject_id: subject,
                values: raw.iter().map(|v| v / total).collect(),
                unnormalized: Some(raw),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeEvaluation {
    /// One vector per non-root group, children before parents.
    pub per_group: IndexMap<String, EvaluationVector>,
    /// Stacked group vectors fed to the primary weights. Absent for one-level trees.
    pub upper_matrix: Option<MembershipMatrix>,
    pub final_vector: EvaluationVector,
}

pub fn evaluate_tree(
    tree: &IndexTree,
    weights: &IndexMap<String, WeightVector>,
    matrices: &IndexMap<String, MembershipMatrix>,
    op: CompositionOperator,
) -> Result<TreeEvaluation> {
    let mut per_group = IndexMap::new();
    let mut upper_matrix = None;
    let final_vector = evaluate_node(
        &tree.root,
        weights,
        matrices,
        op,
        &mut per_group,
        &mut upper_matrix,
    )?;
    Ok(TreeEvaluation {
        per_group,
        upper_matrix,
        final_vector,
    })
}

fn evaluate_node(
    node: &IndexNode,
    weights: &IndexMap<String, WeightVector>,
    matrices: &IndexMap<String, MembershipMatrix>,
    op: CompositionOperator,
    per_group: &mut IndexMap<String, EvaluationVector>,
    upper_matrix: &mut Option<MembershipMatrix>,
) -> Result<EvaluationVector> {
    let weight = weights
        .get(&node.id)
        .ok_or_else(|| Error::MissingGroupData {
            what: "weight vector",
            group: node.id.clone(),
        })?;

    let vector = if node.children.iter().all(IndexNode::is_leaf) {
        let matrix = matrices
            .get(&node.id)
            .ok_or_else(|| Error::MissingGroupData {
                what: "membership matrix",
                group: node.id.clone(),
            })?;
        compose(weight, matrix, op)?
    } else {
        let mut rows = Vec::with_capacity(node.children.len());
        for child in &node.children {
            if child.is_leaf() {
                return Err(Error::MissingGroupData {
                    what: "uniform leaf depth",
                    group: node.id.clone(),
                });
            }
            rows.push(evaluate_node(child, weights, matrices, op, per_group, upper_matrix)?.values);
        }
        let stacked = MembershipMatrix::new(node.id.clone(), node.member_ids(), rows);
        let vector = compose(weight, &stacked, op)?;
        if node.id == ROOT_ID {
            *upper_matrix = Some(stacked);
        }
        vector
    };

    if node.id != ROOT_ID {
        per_group.insert(node.id.clone(), vector.clone());
    }
    Ok(vector)
}

/// Product of the normalized weights along the path from the root to each
/// leaf, in leaf pre-order.
pub fn effective_leaf_weights(
    tree: &IndexTree,
    weights: &IndexMap<String, WeightVector>,
) -> Result<Vec<(String, f64)>> {
    fn walk(
        node: &IndexNode,
        scale: f64,
        weights: &IndexMap<String, WeightVector>,
        out: &mut Vec<(String, f64)>,
    ) -> Result<()> {
        let w = weights
            .get(&node.id)
            .ok_or_else(|| Error::MissingGroupData {
                what: "weight vector",
                group: node.id.clone(),
            })?;
        if w.len() != node.children.len() {
            return Err(Error::DimensionMismatch {
                subject: node.id.clone(),
                left: w.len(),
                right: node.children.len(),
            });
        }
        for ((child, member), weight) in node.children.iter().zip(&w.member_ids).zip(&w.normalized)
        {
            if &child.id != member {
                return Err(Error::MisalignedMembers {
                    subject: node.id.clone(),
                    weight_id: member.clone(),
                    row_id: child.id.clone(),
                });
            }
            if child.is_leaf() {
                out.push((child.id.clone(), scale * weight));
            } else {
                walk(child, scale * weight, weights, out)?;
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    walk(&tree.root, 1.0, weights, &mut out)?;
    Ok(out)
}

/// Collapses the hierarchy into one leaf-level weight vector and the
/// concatenated leaf membership matrix. Composing the two with the weighted
/// average reproduces the staged result.
pub fn flatten(
    tree: &IndexTree,
    weights: &IndexMap<String, WeightVector>,
    matrices: &IndexMap<String, MembershipMatrix>,
) -> Result<(WeightVector, MembershipMatrix)> {
    let leaf_weights = effective_leaf_weights(tree, weights)?;
    let mut rows = Vec::with_capacity(leaf_weights.len());
    for group in tree.leaf_groups() {
        let matrix = matrices
            .get(&group.id)
            .ok_or_else(|| Error::MissingGroupData {
                what: "membership matrix",
                group: group.id.clone(),
            })?;
        rows.extend(matrix.entries.iter().cloned());
    }
    let (ids, values): (Vec<String>, Vec<f64>) = leaf_weights.into_iter().unzip();
    let matrix = MembershipMatrix::new(ROOT_ID, ids.clone(), rows);
    Ok((WeightVector::from_normalized(ROOT_ID, ids, values), matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1() -> MembershipMatrix {
        MembershipMatrix::new(
            "u1",
            vec!["u11", "u12"],
            vec![vec![0.7, 0.2, 0.1, 0.0, 0.0], vec![0.8, 0.1, 0.1, 0.0, 0.0]],
        )
    }

    fn a1() -> WeightVector {
        WeightVector::from_normalized("u1", vec!["u11", "u12"], vec![0.46, 0.54])
    }

    #[test]
    fn weighted_average_b1() {
        let b = compose(&a1(), &r1(), CompositionOperator::WeightedAverage).unwrap();
        let expected = [0.754, 0.146, 0.1, 0.0, 0.0];
        for (got, want) in b.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(b.unnormalized.is_none());
    }

    #[test]
    fn weighted_average_b8() {
        let a8 = WeightVector::from_normalized("u8", vec!["u81", "u82"], vec![0.54, 0.46]);
        let r8 = MembershipMatrix::new(
            "u8",
            vec!["u81", "u82"],
            vec![vec![0.8, 0.1, 0.1, 0.0, 0.0], vec![0.9, 0.1, 0.0, 0.0, 0.0]],
        );
        let b = compose(&a8, &r8, CompositionOperator::WeightedAverage).unwrap();
        let expected = [0.846, 0.1, 0.054, 0.0, 0.0];
        for (got, want) in b.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn single_row_identity() {
        let w = WeightVector::from_normalized("g", vec!["x"], vec![1.0]);
        let m = MembershipMatrix::new("g", vec!["x"], vec![vec![0.3, 0.3, 0.4]]);
        let b = compose(&w, &m, CompositionOperator::WeightedAverage).unwrap();
        assert_eq!(b.values, vec![0.3, 0.3, 0.4]);
    }

    #[test]
    fn max_min_against_direct_evaluation() {
        // max_k min(a_k, r_kj) by hand for a1 = (0.46, 0.54):
        // col 0: max(min(.46,.7), min(.54,.8)) = .54
        // col 1: max(min(.46,.2), min(.54,.1)) = .2
        // col 2: max(.1, .1) = .1
        let b = compose(&a1(), &r1(), CompositionOperator::MaxMin).unwrap();
        let raw = [0.54, 0.2, 0.1, 0.0, 0.0];
        assert_eq!(b.unnormalized.as_deref(), Some(&raw[..]));
        for (got, r) in b.values.iter().zip(raw) {
            assert!((got - r / 0.84).abs() < 1e-15);
        }
    }

    #[test]
    fn max_min_all_zero_is_degenerate() {
        let w = WeightVector::from_normalized("g", vec!["x", "y"], vec![0.0, 0.0]);
        let m = MembershipMatrix::new("g", vec!["x", "y"], vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(
            compose(&w, &m, CompositionOperator::MaxMin),
            Err(Error::DegenerateComposition(_))
        ));
    }

    #[test]
    fn dimension_and_alignment_errors() {
        let w = WeightVector::from_normalized("u1", vec!["u11"], vec![1.0]);
        assert!(matches!(
            compose(&w, &r1(), CompositionOperator::WeightedAverage),
            Err(Error::DimensionMismatch {
                left: 1,
                right: 2,
                ..
            })
        ));
        let swapped = WeightVector::from_normalized("u1", vec!["u12", "u11"], vec![0.54, 0.46]);
        assert!(matches!(
            compose(&swapped, &r1(), CompositionOperator::WeightedAverage),
            Err(Error::MisalignedMembers { .. })
        ));
    }

    #[test]
    fn operator_parsing() {
        assert_eq!("max-min".parse(), Ok(CompositionOperator::MaxMin));
        assert_eq!(
            "weighted-average".parse(),
            Ok(CompositionOperator::WeightedAverage)
        );
        assert!("sum".parse::<CompositionOperator>().is_err());
        assert_eq!(
            CompositionOperator::default().to_string(),
            "weighted-average"
        );
    }
}
