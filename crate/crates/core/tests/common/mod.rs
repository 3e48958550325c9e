//! Shared test data: published reference values for the surveillance case
//! and random instance generators.
#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::Rng;

use fuzzy_eval::{CommentSet, FeedbackBallot, IndexNode, IndexTree, WeightSheet, ROOT_ID};

/// (group, member, average of raw scores, normalized weight) for all 40 weighted indexes.
pub const PUBLISHED_WEIGHTS: [(&str, &str, f64, f64); 40] = [
    ("root", "u1", 1.0, 0.1),
    ("root", "u2", 1.2, 0.12),
    ("root", "u3", 1.0, 0.1),
    ("root", "u4", 1.2, 0.12),
    ("root", "u5", 1.2, 0.12),
    ("root", "u6", 1.2, 0.12),
    ("root", "u7", 1.2, 0.12),
    ("root", "u8", 1.0, 0.1),
    ("root", "u9", 1.0, 0.1),
    ("u1", "u11", 4.6, 0.46),
    ("u1", "u12", 5.4, 0.54),
    ("u2", "u21", 1.4, 0.14),
    ("u2", "u22", 2.2, 0.22),
    ("u2", "u23", 1.8, 0.18),
    ("u2", "u24", 2.0, 0.2),
    ("u2", "u25", 2.6, 0.26),
    ("u3", "u31", 3.2, 0.32),
    ("u3", "u32", 3.4, 0.34),
    ("u3", "u33", 3.4, 0.34),
    ("u4", "u41", 3.2, 0.32),
    ("u4", "u42", 2.0, 0.2),
    ("u4", "u43", 2.6, 0.26),
    ("u4", "u44", 2.2, 0.22),
    ("u5", "u51", 1.6, 0.16),
    ("u5", "u52", 2.0, 0.2),
    ("u5", "u53", 1.8, 0.18),
    ("u5", "u54", 2.4, 0.24),
    ("u5", "u55", 2.2, 0.22),
    ("u6", "u61", 3.4, 0.34),
    ("u6", "u62", 2.0, 0.2),
    ("u6", "u63", 2.8, 0.28),
    ("u6", "u64", 1.8, 0.18),
    ("u7", "u71", 3.4, 0.34),
    ("u7", "u72", 2.0, 0.2),
    ("u7", "u73", 2.2, 0.22),
    ("u7", "u74", 2.4, 0.24),
    ("u8", "u81", 5.4, 0.54),
    ("u8", "u82", 4.6, 0.46),
    ("u9", "u91", 4.8, 0.48),
    ("u9", "u92", 5.2, 0.52),
];

/// Membership rows (Excellent, Good, Average, Fair, Poor) for all 31 leaves.
pub const PUBLISHED_MEMBERSHIP: [(&str, [f64; 5]); 31] = [
    ("u11", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u12", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u21", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u22", [0.7, 0.3, 0.0, 0.0, 0.0]),
    ("u23", [0.8, 0.2, 0.0, 0.0, 0.0]),
    ("u24", [0.8, 0.2, 0.0, 0.0, 0.0]),
    ("u25", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u31", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u32", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u33", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u41", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u42", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u43", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u44", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u51", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u52", [0.8, 0.2, 0.0, 0.0, 0.0]),
    ("u53", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u54", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u55", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u61", [0.8, 0.2, 0.0, 0.0, 0.0]),
    ("u62", [0.7, 0.3, 0.0, 0.0, 0.0]),
    ("u63", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u64", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u71", [0.8, 0.2, 0.0, 0.0, 0.0]),
    ("u72", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u73", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u74", [0.7, 0.3, 0.0, 0.0, 0.0]),
    ("u81", [0.8, 0.1, 0.1, 0.0, 0.0]),
    ("u82", [0.9, 0.1, 0.0, 0.0, 0.0]),
    ("u91", [0.7, 0.2, 0.1, 0.0, 0.0]),
    ("u92", [0.8, 0.1, 0.1, 0.0, 0.0]),
];

/// Group evaluation vectors b1..b9.
pub const PUBLISHED_GROUP_VECTORS: [(&str, [f64; 5]); 9] = [
    ("u1", [0.754, 0.146, 0.1, 0.0, 0.0]),
    ("u2", [0.766, 0.208, 0.026, 0.0, 0.0]),
    ("u3", [0.832, 0.134, 0.034, 0.0, 0.0]),
    ("u4", [0.802, 0.12, 0.078, 0.0, 0.0]),
    ("u5", [0.796, 0.142, 0.062, 0.0, 0.0]),
    ("u6", [0.77, 0.202, 0.028, 0.0, 0.0]),
    ("u7", [0.798, 0.182, 0.02, 0.0, 0.0]),
    ("u8", [0.846, 0.1, 0.054, 0.0, 0.0]),
    ("u9", [0.752, 0.148, 0.1, 0.0, 0.0]),
];

pub const PUBLISHED_FINAL: [f64; 5] = [0.79024, 0.15528, 0.05448, 0.0, 0.0];

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub tree: IndexTree,
    pub sheets: Vec<WeightSheet>,
    pub ballots: Vec<FeedbackBallot>,
}

/// Two-level tree with `groups` primary indexes, each with a random number of
/// leaves in `leaves`.
pub fn random_tree(
    rng: &mut impl Rng,
    groups: usize,
    leaves: std::ops::RangeInclusive<usize>,
) -> IndexTree {
    let primary = (0..groups)
        .map(|g| {
            let n = rng.random_range(leaves.clone());
            IndexNode::group(
                format!("g{g}"),
                format!("Group {g}"),
                (0..n)
                    .map(|l| IndexNode::leaf(format!("g{g}_{l}"), format!("Leaf {g}.{l}")))
                    .collect(),
            )
        })
        .collect();
    IndexTree::new(primary, CommentSet::five_level())
}

/// Random real scores on a group's members that sum to the 10-point budget.
pub fn random_budget(rng: &mut impl Rng, members: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..members).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        if total <= 1e-6 {
            continue;
        }
        let scores: Vec<f64> = raw.iter().map(|r| r * 10.0 / total).collect();
        let sum: f64 = scores.iter().sum();
        if (sum - 10.0).abs() <= 1e-9 && scores.iter().all(|s| (0.0..=10.0).contains(s)) {
            return scores;
        }
    }
}

pub fn random_sheet(rng: &mut impl Rng, tree: &IndexTree, id: &str) -> WeightSheet {
    let mut sheet = WeightSheet::new(id);
    for group in tree.groups() {
        let scores = random_budget(rng, group.children.len());
        sheet = sheet.with_group(&group.id, &group.member_ids(), &scores);
    }
    sheet
}

pub fn random_ballot(rng: &mut impl Rng, tree: &IndexTree, id: &str) -> FeedbackBallot {
    let labels = tree.comment_set.labels();
    let mut ballot = FeedbackBallot::new(id);
    for leaf in tree.leaves() {
        ballot = ballot.with(leaf.id.clone(), labels.choose(rng).unwrap().clone());
    }
    ballot
}

pub fn random_instance(
    rng: &mut impl Rng,
    groups: std::ops::RangeInclusive<usize>,
    leaves: std::ops::RangeInclusive<usize>,
    sheets: usize,
    ballots: usize,
) -> Instance {
    let g = rng.random_range(groups);
    let tree = random_tree(rng, g, leaves);
    let sheets = (0..sheets)
        .map(|i| random_sheet(rng, &tree, &format!("s{i:02}")))
        .collect();
    let ballots = (0..ballots)
        .map(|i| random_ballot(rng, &tree, &format!("b{i:02}")))
        .collect();
    Instance {
        tree,
        sheets,
        ballots,
    }
}

pub fn root_id() -> &'static str {
    ROOT_ID
}
