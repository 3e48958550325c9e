//! Weighted-average versus max-min composition on the same inputs.
//!
//!     cargo run --example composition_operators

use fuzzy_eval::{
    compose, decide, evaluate, fixtures, CompositionOperator, EvaluationSettings, MembershipMatrix,
    WeightVector, DEFAULT_TIE_EPSILON,
};

fn show(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.4}")).collect();
    format!("({})", parts.join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // One group, three members.
    let w = WeightVector::from_normalized("g", vec!["a", "b", "c"], vec![0.6, 0.3, 0.1]);
    let r = MembershipMatrix::new(
        "g",
        vec!["a", "b", "c"],
        vec![
            vec![0.2, 0.5, 0.3, 0.0, 0.0],
            vec![0.7, 0.2, 0.1, 0.0, 0.0],
            vec![0.0, 0.0, 0.2, 0.4, 0.4],
        ],
    );
    for op in [
        CompositionOperator::WeightedAverage,
        CompositionOperator::MaxMin,
    ] {
        let b = compose(&w, &r, op)?;
        print!("{:<17} b = {}", op.to_string(), show(&b.values));
        if let Some(raw) = &b.unnormalized {
            print!("  raw {}", show(raw));
        }
        println!();
    }

    println!();
    let data = fixtures::surveillance();
    for op in [
        CompositionOperator::WeightedAverage,
        CompositionOperator::MaxMin,
    ] {
        let settings = EvaluationSettings {
            operator: op,
            ..Default::default()
        };
        let out = evaluate(&data.tree, &data.sheets, &data.ballots, &settings)?;
        let v = decide(
            &out.evaluation.final_vector,
            &data.tree.comment_set,
            DEFAULT_TIE_EPSILON,
        )?;
        println!(
            "{:<17} B = {}  verdict {} (tied: {}) score {:.4}",
            op.to_string(),
            show(&out.evaluation.final_vector.values),
            v.winning_label,
            v.tied_labels.join("/"),
            v.weighted_score
        );
    }
    Ok(())
}
