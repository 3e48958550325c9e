//! Bundled replication dataset: a community security video surveillance
//! project evaluated on a 9-group, 31-leaf index system.
//!
//! The weight sheets hold five consultants' direct scores. The ballots are
//! ten complete ballots whose per-leaf grade counts equal the published
//! membership frequencies times ten. Ballots were expanded in a canonical
//! order: for each leaf, consultants `c01..c10` take the grades best first,
//! so with counts (7, 2, 1, 0, 0) `c01..c07` say Excellent, `c08..c09` Good
//! and `c10` Average. Any expansion with the same counts evaluates
//! identically.

use std::path::PathBuf;

use crate::index::IndexTree;
use crate::io;
use crate::membership::FeedbackBallot;
use crate::weights::WeightSheet;

pub const TREE_TOML: &str = include_str!("../data/surveillance/tree.toml");
pub const WEIGHTS_CSV: &str = include_str!("../data/surveillance/weights.csv");
pub const BALLOTS_CSV: &str = include_str!("../data/surveillance/ballots.csv");

#[derive(Debug, Clone)]
pub struct Dataset {
    pub tree: IndexTree,
    pub sheets: Vec<WeightSheet>,
    pub ballots: Vec<FeedbackBallot>,
}

pub fn surveillance() -> Dataset {
    let tree =
        io::parse_tree_str(TREE_TOML, "surveillance/tree.toml").expect("bundled tree is valid");
    let sheets = io::parse_weight_sheets_str(WEIGHTS_CSV, "surveillance/weights.csv", &tree)
        .expect("bundled weight sheets are valid");
    let ballots = io::parse_ballots_str(BALLOTS_CSV, "surveillance/ballots.csv", &tree)
        .expect("bundled ballots are valid");
    Dataset {
        tree,
        sheets,
        ballots,
    }
}

/// Directory holding the bundled files inside the source checkout.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/surveillance")
}

pub fn bundle_manifest_path() -> PathBuf {
    data_dir().join("bundle.toml")
}
