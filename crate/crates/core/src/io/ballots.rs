//! Ballot CSV: `consultant_id,index_id,label`, one row per consultant and
//! leaf index.

use std::collections::btree_map::Entry;
use std::fmt::Write as _;
use std::path::Path;

use indexmap::IndexMap;
use serde::Deserialize;

use super::{check_header, csv_error, csv_reader, read_text};
use crate::error::{Error, Result};
use crate::index::IndexTree;
use crate::membership::{validate_ballots, FeedbackBallot};
use crate::validate::{ValidationReport, Violation};

pub const HEADER: [&str; 3] = ["consultant_id", "index_id", "label"];

#[derive(Deserialize)]
struct Row {
    consultant_id: String,
    index_id: String,
    label: String,
}

pub fn read_ballots(text: &str, source: &str) -> Result<Vec<FeedbackBallot>> {
    check_header(source, text, &HEADER)?;
    let mut ballots: IndexMap<String, FeedbackBallot> = IndexMap::new();
    let mut duplicates = ValidationReport::new();
    for row in csv_reader(text).deserialize::<Row>() {
        let row = row.map_err(|e| csv_error(source, &e))?;
        if row.consultant_id.is_empty() || row.index_id.is_empty() {
            return Err(Error::syntax(source, "empty identifier field"));
        }
        let ballot = ballots
            .entry(row.consultant_id.clone())
            .or_insert_with(|| FeedbackBallot::new(row.consultant_id.clone()));
        match ballot.comments.entry(row.index_id.clone()) {
            Entry::Vacant(slot) => {
                slot.insert(row.label);
            }
            Entry::Occupied(_) => duplicates.push(Violation::DuplicateComment {
                consultant: row.consultant_id,
                leaf: row.index_id,
            }),
        }
    }
    duplicates.into_result(source.to_string())?;
    Ok(ballots.into_values().collect())
}

pub fn parse_ballots_str(
    text: &str,
    source: &str,
    tree: &IndexTree,
) -> Result<Vec<FeedbackBallot>> {
    let ballots = read_ballots(text, source)?;
    validate_ballots(&ballots, tree).into_result(format!("{source}: ballots"))?;
    Ok(ballots)
}

pub fn parse_ballots(path: impl AsRef<Path>, tree: &IndexTree) -> Result<Vec<FeedbackBallot>> {
    let path = path.as_ref();
    parse_ballots_str(&read_text(path)?, &path.display().to_string(), tree)
}

/// Writes ballots in consultant order with leaves in tree order; comments on
/// ids outside the tree follow in key order.
pub fn render_ballots(ballots: &[FeedbackBallot], tree: &IndexTree) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    let leaves = tree.leaves();
    for ballot in ballots {
        for leaf in &leaves {
            if let Some(label) = ballot.comments.get(&leaf.id) {
                let _ = writeln!(out, "{},{},{}", ballot.consultant_id, leaf.id, label);
            }
        }
        for (id, label) in &ballot.comments {
            if !leaves.iter().any(|l| &l.id == id) {
                let _ = writeln!(out, "{},{},{}", ballot.consultant_id, id, label);
            }
        }
    }
    out
}
