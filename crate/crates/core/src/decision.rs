//! Maximum-membership decision on the final vector.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::compose::EvaluationVector;
use crate::error::{Error, Result};
use crate::index::CommentSet;

pub const DEFAULT_TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub winning_label: String,
    pub winning_value: f64,
    /// Labels whose membership lies within the tie epsilon of the maximum,
    /// best grade first. Always contains the winner.
    pub tied_labels: Vec<String>,
    /// Auxiliary defuzzified score `Σ B_j · grade_j`. Never used for the decision.
    pub weighted_score: f64,
    #[serde(default)]
    pub per_group: IndexMap<String, EvaluationVector>,
}

impl Verdict {
    pub fn is_tied(&self) -> bool {
        self.tied_labels.len() > 1
    }

    pub fn with_per_group(mut self, per_group: IndexMap<String, EvaluationVector>) -> Self {
        self.per_group = per_group;
        self
    }
}

/// Picks the grade with the largest membership. On an exact tie the better
/// grade wins; every grade within `tie_epsilon` of the maximum is reported.
pub fn decide(
    final_vector: &EvaluationVector,
    comment_set: &CommentSet,
    tie_epsilon: f64,
) -> Result<Verdict> {
    let values = &final_vector.values;
    if values.len() != comment_set.len() {
        return Err(Error::GradeCountMismatch {
            expected: comment_set.len(),
            got: values.len(),
        });
    }
    let tie_epsilon = tie_epsilon.max(0.0);

    let mut best = 0;
    for (j, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = j;
        }
    }
    let max = values[best];
    let tied_labels = values
        .iter()
        .zip(comment_set.labels())
        .filter(|(&v, _)| max - v <= tie_epsilon)
        .map(|(_, l)| l.clone())
        .collect();

    Ok(Verdict {
        winning_label: comment_set.labels()[best].clone(),
        winning_value: max,
        tied_labels,
        weighted_score: weighted_score(values, comment_set),
        per_group: IndexMap::new(),
    })
}

/// `Σ B_j · grade_j`, clamped to the grade range to absorb rounding.
pub fn weighted_score(values: &[f64], comment_set: &CommentSet) -> f64 {
    let score: f64 = values
        .iter()
        .zip(comment_set.grades())
        .map(|(b, g)| b * g)
        .sum();
    score.clamp(comment_set.worst_grade(), comment_set.best_grade())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(values: &[f64]) -> EvaluationVector {
        EvaluationVector::new("root", values.to_vec())
    }

    #[test]
    fn published_final_vector_is_excellent() {
        let cs = CommentSet::five_level();
        let v = decide(
            &vector(&[0.79024, 0.15528, 0.05448, 0.0, 0.0]),
            &cs,
            DEFAULT_TIE_EPSILON,
        )
        .unwrap();
        assert_eq!(v.winning_label, "Excellent");
        assert_eq!(v.winning_value, 0.79024);
        assert_eq!(v.tied_labels, ["Excellent"]);
        assert!(!v.is_tied());
        // 0.79024*5 + 0.15528*4 + 0.05448*3 = 3.9512 + 0.62112 + 0.16344
        assert!((v.weighted_score - 4.73576).abs() < 1e-12);
    }

    #[test]
    fn exact_tie_prefers_better_grade() {
        let cs = CommentSet::five_level();
        let v = decide(
            &vector(&[0.5, 0.5, 0.0, 0.0, 0.0]),
            &cs,
            DEFAULT_TIE_EPSILON,
        )
        .unwrap();
        assert_eq!(v.winning_label, "Excellent");
        assert_eq!(v.tied_labels, ["Excellent", "Good"]);
    }

    #[test]
    fn near_tie_is_reported_but_max_wins() {
        let cs = CommentSet::five_level();
        let v = decide(
            &vector(&[0.3, 0.3 + 1e-12, 0.4 - 1e-12, 0.0, 0.0]),
            &cs,
            1e-9,
        )
        .unwrap();
        assert_eq!(v.winning_label, "Average");
        assert_eq!(v.tied_labels, ["Average"]);
        let v = decide(
            &vector(&[0.45, 0.45 + 1e-12, 0.1 - 1e-12, 0.0, 0.0]),
            &cs,
            1e-9,
        )
        .unwrap();
        assert_eq!(v.winning_label, "Good");
        assert_eq!(v.tied_labels, ["Excellent", "Good"]);
    }

    #[test]
    fn length_mismatch() {
        let cs = CommentSet::five_level();
        assert!(matches!(
            decide(&vector(&[1.0, 0.0]), &cs, 0.0),
            Err(Error::GradeCountMismatch {
                expected: 5,
                got: 2
            })
        ));
    }
}
