//! Building a one-level index system with a three-level comment set in code,
//! writing it to the text formats, and evaluating it.
//!
//!     cargo run --example custom_index_tree

use fuzzy_eval::io::{render_ballots, render_tree, render_weight_sheets};
use fuzzy_eval::{
    evaluate, CommentSet, EvaluationSettings, FeedbackBallot, IndexNode, IndexTree, WeightSheet,
    ROOT_ID,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let comments = CommentSet::new(vec!["good", "fair", "poor"], vec![100.0, 60.0, 20.0])?;
    let tree = IndexTree::validated(
        vec![
            IndexNode::leaf("latency", "Latency").with_explanation("p99 under load"),
            IndexNode::leaf("docs", "Documentation"),
            IndexNode::leaf("api", "API ergonomics"),
        ],
        comments,
    )?;
    let members = ["latency", "docs", "api"];

    let sheets = vec![
        WeightSheet::new("alice").with_group(ROOT_ID, &members, &[5.0, 2.0, 3.0]),
        WeightSheet::new("bob").with_group(ROOT_ID, &members, &[4.0, 3.0, 3.0]),
    ];
    let ballots = vec![
        FeedbackBallot::new("alice")
            .with("latency", "good")
            .with("docs", "poor")
            .with("api", "fair"),
        FeedbackBallot::new("bob")
            .with("latency", "fair")
            .with("docs", "fair")
            .with("api", "good"),
        FeedbackBallot::new("carol")
            .with("latency", "good")
            .with("docs", "fair")
            .with("api", "good"),
    ];

    println!("--- tree.toml\n{}", render_tree(&tree));
    println!("--- weights.csv\n{}", render_weight_sheets(&sheets, &tree));
    println!("--- ballots.csv\n{}", render_ballots(&ballots, &tree));

    let out = evaluate(&tree, &sheets, &ballots, &EvaluationSettings::default())?;
    print!("{}", out.report.to_text());
    Ok(())
}
