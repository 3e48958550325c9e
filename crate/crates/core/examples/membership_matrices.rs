//! Tallying ballots into per-group membership matrices.
//!
//!     cargo run --example membership_matrices

use fuzzy_eval::{build_matrices, fixtures, tally_ballots, ValidSubsetPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = fixtures::surveillance();
    let labels = data.tree.comment_set.labels();

    for policy in [ValidSubsetPolicy::all(), ValidSubsetPolicy::random_k(4, 3)] {
        let tallies = tally_ballots(&data.ballots, &data.tree, &policy)?;
        let matrices = build_matrices(&tallies, &data.tree)?;
        println!("policy {policy}");
        for group in ["u2", "u7"] {
            let m = &matrices[group];
            println!("  R({group})  {}", labels.join(" "));
            for (id, row) in m.row_ids.iter().zip(&m.entries) {
                let t = &tallies[id];
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.3}")).collect();
                println!(
                    "    {id:<4} counts {:?} of {}  ->  {}",
                    t.counts,
                    t.n,
                    cells.join(" ")
                );
            }
            println!("    max |row sum - 1| = {:.1e}", m.max_row_sum_error());
        }
    }
    Ok(())
}
