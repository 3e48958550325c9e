//! End-to-end run on the bundled surveillance dataset, read from disk through
//! the bundle manifest.
//!
//!     cargo run --example case_study

use fuzzy_eval::{fixtures, run_pipeline, ProjectBundle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bundle = ProjectBundle::from_manifest(fixtures::bundle_manifest_path())?;
    let (verdict, report) = run_pipeline(&bundle)?;

    print!("{}", report.to_text());

    println!("\nPer-group vectors");
    for (group, b) in &verdict.per_group {
        let top = b.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("  {group:<3} max membership {top:.4}");
    }
    Ok(())
}
