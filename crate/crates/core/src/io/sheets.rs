//! Weight-sheet CSV: `consultant_id,group_id,index_id,score`, one row per
//! consultant and scored index. Sheets come out in order of each
//! consultant's first row.

use std::collections::btree_map::Entry;
use std::fmt::Write as _;
use std::path::Path;

use indexmap::IndexMap;
use serde::Deserialize;

use super::{check_header, csv_error, csv_reader, read_text};
use crate::error::{Error, Result};
use crate::index::IndexTree;
use crate::validate::{ValidationReport, Violation};
use crate::weights::{validate_sheets, WeightSheet};

pub const HEADER: [&str; 4] = ["consultant_id", "group_id", "index_id", "score"];

#[derive(Deserialize)]
struct Row {
    consultant_id: String,
    group_id: String,
    index_id: String,
    score: f64,
}

/// Reads sheets without checking them against a tree.
pub fn read_weight_sheets(text: &str, source: &str) -> Result<Vec<WeightSheet>> {
    check_header(source, text, &HEADER)?;
    let mut sheets: IndexMap<String, WeightSheet> = IndexMap::new();
    let mut duplicates = ValidationReport::new();
    for row in csv_reader(text).deserialize::<Row>() {
        let row = row.map_err(|e| csv_error(source, &e))?;
        if row.consultant_id.is_empty() || row.group_id.is_empty() || row.index_id.is_empty() {
            return Err(Error::syntax(source, "empty identifier field"));
        }
        let sheet = sheets
            .entry(row.consultant_id.clone())
            .or_insert_with(|| WeightSheet::new(row.consultant_id.clone()));
        match sheet
            .group_scores
            .entry(row.group_id.clone())
            .or_default()
            .entry(row.index_id.clone())
        {
            Entry::Vacant(slot) => {
                slot.insert(row.score);
            }
            Entry::Occupied(_) => duplicates.push(Violation::DuplicateScore {
                consultant: row.consultant_id,
                group: row.group_id,
                member: row.index_id,
            }),
        }
    }
    duplicates.into_result(source.to_string())?;
    Ok(sheets.into_values().collect())
}

/// Parses sheets from text and validates each one against `tree`.
pub fn parse_weight_sheets_str(
    text: &str,
    source: &str,
    tree: &IndexTree,
) -> Result<Vec<WeightSheet>> {
    let sheets = read_weight_sheets(text, source)?;
    validate_sheets(&sheets, tree).into_result(format!("{source}: weight sheets"))?;
    Ok(sheets)
}

pub fn parse_weight_sheets(path: impl AsRef<Path>, tree: &IndexTree) -> Result<Vec<WeightSheet>> {
    let path = path.as_ref();
    parse_weight_sheets_str(&read_text(path)?, &path.display().to_string(), tree)
}

/// Writes sheets in consultant order, groups and members in tree order.
/// Scores for groups or members outside the tree follow in key order.
pub fn render_weight_sheets(sheets: &[WeightSheet], tree: &IndexTree) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    let groups = tree.groups();
    for sheet in sheets {
        let mut row = |group: &str, member: &str, score: f64| {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                sheet.consultant_id, group, member, score
            );
        };
        for group in &groups {
            let Some(scores) = sheet.group_scores.get(&group.id) else {
                continue;
            };
            for member in &group.children {
                if let Some(&s) = scores.get(&member.id) {
                    row(&group.id, &member.id, s);
                }
            }
            for (member, &s) in scores {
                if !group.children.iter().any(|c| &c.id == member) {
                    row(&group.id, member, s);
                }
            }
        }
        for (group, scores) in &sheet.group_scores {
            if !groups.iter().any(|g| &g.id == group) {
                for (member, &s) in scores {
                    row(group, member, s);
                }
            }
        }
    }
    out
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
                    "u2",
                    "Two",
                    vec![IndexNode::leaf("u21", "c"), IndexNode::leaf("u22", "d")],
                ),
            ],
            CommentSet::five_level(),
        )
    }

    const GOOD: &str = "consultant_id,group_id,index_id,score
c1,root,u1,4
c1,root,u2,6
c1,u1,u11,5
c1,u1,u12,5
c1,u2,u21,2.5
c1,u2,u22,7.5
";

    #[test]
    fn parses_and_round_trips() {
        let t = tree();
        let sheets = parse_weight_sheets_str(GOOD, "w.csv", &t).unwrap();
        assert_eq!(sheets.len(), 1);
        assert_eq!(sheets[0].score("u2", "u22"), Some(7.5));
        let rendered = render_weight_sheets(&sheets, &t);
        assert_eq!(rendered, GOOD);
    }

    #[test]
    fn out_of_range_names_consultant_and_group() {
        let text = GOOD
            .replace("c1,u1,u11,5", "c1,u1,u11,11")
            .replace("c1,u1,u12,5", "c1,u1,u12,-1");
        let err = parse_weight_sheets_str(&text, "w.csv", &tree()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let msg = err.to_string();
        assert!(
            msg.contains("c1") && msg.contains("u1") && msg.contains("outside"),
            "{msg}"
        );
    }

    #[test]
    fn missing_group_is_reported() {
        let text: String = GOOD
            .lines()
            .filter(|l| !l.contains(",u2,"))
            .map(|l| format!("{l}\n"))
            .collect();
        let err = parse_weight_sheets_str(&text, "w.csv", &tree()).unwrap_err();
        assert!(
            err.to_string().contains("no scores for group `u2`"),
            "{err}"
        );
    }

    #[test]
    fn duplicate_rows_are_reported() {
        let text = format!("{GOOD}c1,u1,u11,5\n");
        let err = parse_weight_sheets_str(&text, "w.csv", &tree()).unwrap_err();
        assert!(err.to_string().contains("scored twice"), "{err}");
    }

    #[test]
    fn non_numeric_score_is_a_syntax_error() {
        let text = GOOD.replace("2.5", "lots");
        let err = parse_weight_sheets_str(&text, "w.csv", &tree()).unwrap_err();
        assert!(
            matches!(&err, Error::Syntax { location, .. } if location == "w.csv:6"),
            "{err:?}"
        );
    }

    #[test]
    fn wrong_header_and_empty_file() {
        assert!(matches!(
            parse_weight_sheets_str("a,b,c,d\n", "w.csv", &tree()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_weight_sheets_str("", "w.csv", &tree()),
            Err(Error::Syntax { .. })
        ));
    }
}
