//! File formats.
//!
//! * Index tree and comment set: one TOML document ([`tree`]).
//! * Weight sheets: CSV with header `consultant_id,group_id,index_id,score`
//!   ([`sheets`]). Primary-layer scores use the group id `root`.
//! * Ballots: CSV with header `consultant_id,index_id,label` ([`ballots`]).
//!
//! Every parser validates what it reads and fails with the offending
//! consultant, group or index named in the error.

pub mod ballots;
pub mod sheets;
pub mod tree;

use std::path::Path;

use crate::error::{Error, Result};

pub use ballots::{parse_ballots, parse_ballots_str, render_ballots};
pub use sheets::{parse_weight_sheets, parse_weight_sheets_str, render_weight_sheets};
pub use tree::{parse_tree_file, parse_tree_str, render_tree};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

pub(crate) fn csv_error(source: &str, err: &csv::Error) -> Error {
    let location = match err.position() {
        Some(pos) => format!("{source}:{}", pos.line()),
        None => source.to_string(),
    };
    let message = match err.kind() {
        csv::ErrorKind::Deserialize { err, .. } => match err.field() {
            Some(field) => format!("field {}: {}", field + 1, err.kind()),
            None => err.kind().to_string(),
        },
        _ => err.to_string(),
    };
    Error::syntax(location, message)
}

pub(crate) fn check_header(source: &str, text: &str, expected: &[&str]) -> Result<()> {
    if text
        .lines()
        .all(|l| l.trim().is_empty() || l.trim_start().starts_with('#'))
    {
        return Err(Error::syntax(source, "empty file"));
    }
    let mut reader = csv_reader(text);
    let headers = reader.headers().map_err(|e| csv_error(source, &e))?;
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(Error::syntax(
            format!("{source}:1"),
            format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                got.join(",")
            ),
        ));
    }
    Ok(())
}
