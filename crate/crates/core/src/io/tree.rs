//! Index tree TOML document.
//!
//! ```toml
//! [comment_set]
//! labels = ["Excellent", "Good", "Average", "Fair", "Poor"]
//! grades = [5.0, 4.0, 3.0, 2.0, 1.0]
//!
//! [[index]]
//! id = "u1"
//! name = "Information Resources"
//!
//! [[index.children]]
//! id = "u11"
//! name = "Resources Opening"
//! explanation = "The scope of video surveillance information that open to the community"
//! ```
//!
//! `[[index]]` entries are the primary indexes in order; `[[index.children]]`
//! entries belong to the most recent `[[index]]`. `explanation` is optional.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{CommentSet, IndexNode, IndexTree};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDocument {
    comment_set: CommentSetDocument,
    #[serde(default)]
    index: Vec<NodeDocument>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommentSetDocument {
    labels: Vec<String>,
    grades: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDocument {
    id: String,
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    explanation: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<NodeDocument>,
}

impl From<NodeDocument> for IndexNode {
    fn from(doc: NodeDocument) -> Self {
        IndexNode {
            id: doc.id,
            name: doc.name,
            explanation: doc.explanation,
            children: doc.children.into_iter().map(Into::into).collect(),
        }
    }
}

impl From<&IndexNode> for NodeDocument {
    fn from(node: &IndexNode) -> Self {
        NodeDocument {
            id: node.id.clone(),
            name: node.name.clone(),
            explanation: node.explanation.clone(),
            children: node.children.iter().map(Into::into).collect(),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Parses and validates a tree document. `source` names the input in errors.
pub fn parse_tree_str(text: &str, source: &str) -> Result<IndexTree> {
    if text.trim().is_empty() {
        return Err(Error::syntax(source, "empty file"));
    }
    let doc: TreeDocument = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("{source}:{line}:{col}")
            }
            None => source.to_string(),
        };
        Error::syntax(location, e.message().trim())
    })?;
    let comment_set =
        CommentSet::new(doc.comment_set.labels, doc.comment_set.grades).map_err(|e| match e {
            Error::Invalid { report, .. } => {
                Error::invalid(format!("{source}: comment set"), report)
            }
            other => other,
        })?;
    let tree = IndexTree::new(doc.index.into_iter().map(Into::into).collect(), comment_set);
    tree.validate()
        .into_result(format!("{source}: index tree"))?;
    Ok(tree)
}

pub fn parse_tree_file(path: impl AsRef<Path>) -> Result<IndexTree> {
    let path = path.as_ref();
    parse_tree_str(&super::read_text(path)?, &path.display().to_string())
}

pub fn render_tree(tree: &IndexTree) -> String {
    let doc = TreeDocument {
        comment_set: CommentSetDocument {
            labels: tree.comment_set.labels().to_vec(),
            grades: tree.comment_set.grades().to_vec(),
        },
        index: tree.primary().iter().map(Into::into).collect(),
    };
    toml::to_string(&doc).expect("tree documents always serialize")
}
