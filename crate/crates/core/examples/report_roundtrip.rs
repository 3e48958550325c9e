//! Saving the structured report as JSON and re-rendering it later without
//! the original inputs.
//!
//!     cargo run --example report_roundtrip

use fuzzy_eval::{evaluate, fixtures, EvaluationSettings, ReportDocument, ValidSubsetPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixtures::surveillance();
    let settings = EvaluationSettings {
        ballot_policy: ValidSubsetPolicy::random_k(6, 2024),
        ..Default::default()
    };
    let out = evaluate(&data.tree, &data.sheets, &data.ballots, &settings)?;

    let path = std::env::temp_dir().join("fuzzy-eval-report.json");
    std::fs::write(&path, out.report.to_json())?;
    println!("wrote {}", path.display());

    let restored = ReportDocument::from_json(&std::fs::read_to_string(&path)?)?;
    assert_eq!(restored, out.report);
    assert_eq!(restored.to_text(), out.report.to_text());

    let p = &restored.provenance;
    println!(
        "ballots used: {} (n = {})",
        p.ballots.selected.join(", "),
        p.n
    );
    println!("tree digest:  {}", p.inputs.tree_sha256);
    println!(
        "verdict:      {} at {:.5}",
        restored.verdict.winning_label, restored.verdict.winning_value
    );
    Ok(())
}
