//! Direct-scoring weight elicitation with a seeded random subset of
//! consultants.
//!
//!     cargo run --example weight_elicitation -- 42

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzy_eval::weights::GROUP_BUDGET;
use fuzzy_eval::{
    aggregate_weights, select_valid, validate_sheets, CommentSet, IndexNode, IndexTree,
    ValidSubsetPolicy, WeightSheet, ROOT_ID,
};

/// Splits the 10-point budget over `n` members in steps of 0.5.
fn budget(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut halves = vec![0u32; n];
    for _ in 0..(GROUP_BUDGET as u32 * 2) {
        halves[rng.random_range(0..n)] += 1;
    }
    halves.into_iter().map(|h| h as f64 / 2.0).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(7);

    let tree = IndexTree::validated(
        vec![
            IndexNode::group(
                "env",
                "Environment",
                vec![
                    IndexNode::leaf("air", "Air quality"),
                    IndexNode::leaf("noise", "Noise"),
                    IndexNode::leaf("green", "Green space"),
                ],
            ),
            IndexNode::group(
                "svc",
                "Services",
                vec![
                    IndexNode::leaf("transit", "Transit"),
                    IndexNode::leaf("schools", "Schools"),
                ],
            ),
        ],
        CommentSet::five_level(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sheets: Vec<WeightSheet> = (1..=15)
        .map(|i| {
            let mut sheet = WeightSheet::new(format!("c{i:02}"));
            for group in tree.groups() {
                let members = group.member_ids();
                let scores = budget(&mut rng, members.len());
                sheet = sheet.with_group(&group.id, &members, &scores);
            }
            sheet
        })
        .collect();

    // A sheet that overspends its budget is rejected up front.
    let mut broken = sheets.clone();
    broken.push(WeightSheet::new("c16").with_group(ROOT_ID, &["env", "svc"], &[6.0, 6.0]));
    let report = validate_sheets(&broken, &tree);
    for v in &report {
        println!("rejected: {v}");
    }

    for policy in [
        ValidSubsetPolicy::all(),
        ValidSubsetPolicy::random_k(5, seed),
    ] {
        let chosen = select_valid(&sheets, &policy)?;
        let ids: Vec<&str> = chosen.iter().map(|s| s.consultant_id.as_str()).collect();
        println!("\npolicy {policy} (seed {seed}): {}", ids.join(" "));
        let weights = aggregate_weights(&chosen, &tree)?;
        for (group, w) in &weights {
            for (k, member) in w.member_ids.iter().enumerate() {
                println!(
                    "  {group:<5} {member:<8} avg {:>6.3}  weight {:.4}",
                    w.averages[k], w.normalized[k]
                );
            }
        }
    }
    Ok(())
}
