//! End-to-end evaluation: validate, select and aggregate weights, tally
//! ballots into matrices, compose level by level, decide, and report.

use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::compose::{evaluate_tree, CompositionOperator, TreeEvaluation};
use crate::decision::{decide, Verdict, DEFAULT_TIE_EPSILON};
use crate::error::{Error, Result};
use crate::index::IndexTree;
use crate::io::{self, render_ballots, render_tree, render_weight_sheets};
use crate::membership::{
    build_matrices, tally_ballots, validate_ballots, FeedbackBallot, FeedbackTally,
    MembershipMatrix,
};
use crate::policy::{Submission, ValidSubsetPolicy};
use crate::report::{render_report, InputDigests, Provenance, ReportDocument, SelectionRecord};
use crate::weights::{aggregate_weights, validate_sheets, WeightSheet, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationSettings {
    pub weight_policy: ValidSubsetPolicy,
    pub ballot_policy: ValidSubsetPolicy,
    pub operator: CompositionOperator,
    pub tie_epsilon: f64,
}

impl Default for EvaluationSettings {
    fn default() -> Self {
        Self {
            weight_policy: ValidSubsetPolicy::all(),
            ballot_policy: ValidSubsetPolicy::all(),
            operator: CompositionOperator::WeightedAverage,
            tie_epsilon: DEFAULT_TIE_EPSILON,
        }
    }
}

/// Everything computed by one run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub weights: IndexMap<String, WeightVector>,
    pub tallies: IndexMap<String, FeedbackTally>,
    pub matrices: IndexMap<String, MembershipMatrix>,
    pub evaluation: TreeEvaluation,
    pub verdict: Verdict,
    pub report: ReportDocument,
}

fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn consultant_ids<T: Submission>(items: &[T]) -> Vec<String> {
    items
        .iter()
        .map(|s| s.consultant_id().to_string())
        .collect()
}

/// Digests of the canonical renderings of the inputs, so formatting-only
/// differences in the source files do not change them.
pub fn input_digests(
    tree: &IndexTree,
    sheets: &[WeightSheet],
    ballots: &[FeedbackBallot],
) -> InputDigests {
    InputDigests {
        tree_sha256: sha256_hex(&render_tree(tree)),
        weight_sheets_sha256: sha256_hex(&render_weight_sheets(sheets, tree)),
        ballots_sha256: sha256_hex(&render_ballots(ballots, tree)),
    }
}

/// Runs the whole evaluation on in-memory inputs. All inputs are validated
/// before anything is computed.
pub fn evaluate(
    tree: &IndexTree,
    sheets: &[WeightSheet],
    ballots: &[FeedbackBallot],
    settings: &EvaluationSettings,
) -> Result<Outcome> {
    tree.validate().into_result("index tree")?;
    validate_sheets(sheets, tree).into_result("weight sheets")?;
    validate_ballots(ballots, tree).into_result("ballots")?;
    if sheets.is_empty() || ballots.is_empty() {
        return Err(Error::NoSubmissions);
    }

    let sheet_indices = settings.weight_policy.select_indices(sheets.len())?;
    let valid_sheets: Vec<WeightSheet> = sheet_indices.iter().map(|&i| sheets[i].clone()).collect();
    let weights = aggregate_weights(&valid_sheets, tree)?;

    let ballot_indices = settings.ballot_policy.select_indices(ballots.len())?;
    let valid_ballots: Vec<FeedbackBallot> =
        ballot_indices.iter().map(|&i| ballots[i].clone()).collect();
    let tallies = tally_ballots(&valid_ballots, tree, &ValidSubsetPolicy::all())?;
    let matrices = build_matrices(&tallies, tree)?;

    let evaluation = evaluate_tree(tree, &weights, &matrices, settings.operator)?;
    let verdict = decide(
        &evaluation.final_vector,
        &tree.comment_set,
        settings.tie_epsilon,
    )?
    .with_per_group(evaluation.per_group.clone());

    let provenance = Provenance {
        inputs: input_digests(tree, sheets, ballots),
        weight_sheets: SelectionRecord {
            policy: settings.weight_policy,
            submitted: sheets.len(),
            selected: consultant_ids(&valid_sheets),
        },
        ballots: SelectionRecord {
            policy: settings.ballot_policy,
            submitted: ballots.len(),
            selected: consultant_ids(&valid_ballots),
        },
        n: valid_ballots.len() as u32,
    };
    let report = render_report(
        &verdict,
        tree,
        &weights,
        &matrices,
        &evaluation,
        settings,
        &provenance,
    );

    Ok(Outcome {
        weights,
        tallies,
        matrices,
        evaluation,
        verdict,
        report,
    })
}

/// Input files plus run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectBundle {
    pub tree_file: PathBuf,
    pub weight_sheets_file: PathBuf,
    pub ballots_file: PathBuf,
    pub settings: EvaluationSettings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDocument {
    tree: PathBuf,
    weight_sheets: PathBuf,
    ballots: PathBuf,
    #[serde(default)]
    operator: CompositionOperator,
    #[serde(default = "default_tie_epsilon")]
    tie_epsilon: f64,
    #[serde(default)]
    policy: PolicyDocument,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PolicyDocument {
    #[serde(default)]
    weights: ValidSubsetPolicy,
    #[serde(default)]
    ballots: ValidSubsetPolicy,
}

fn default_tie_epsilon() -> f64 {
    DEFAULT_TIE_EPSILON
}

impl ProjectBundle {
    pub fn new(
        tree_file: impl Into<PathBuf>,
        weight_sheets_file: impl Into<PathBuf>,
        ballots_file: impl Into<PathBuf>,
    ) -> Self {
        Self {
            tree_file: tree_file.into(),
            weight_sheets_file: weight_sheets_file.into(),
            ballots_file: ballots_file.into(),
            settings: EvaluationSettings::default(),
        }
    }

    /// Reads a bundle manifest. Relative file paths resolve against the
    /// manifest's directory.
    ///
    /// ```toml
    /// tree = "tree.toml"
    /// weight_sheets = "weights.csv"
    /// ballots = "ballots.csv"
    /// operator = "weighted-average"   # or "max-min"
    /// tie_epsilon = 1e-9
    ///
    /// [policy.weights]
    /// mode = "random-k"
    /// k = 5
    /// seed = 7
    /// ```
    pub fn from_manifest(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = io::read_text(path)?;
        let doc: BundleDocument = toml::from_str(&text)
            .map_err(|e| Error::syntax(path.display().to_string(), e.message().trim()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        if doc.tie_epsilon.is_nan() || doc.tie_epsilon < 0.0 {
            return Err(Error::syntax(
                path.display().to_string(),
                "tie_epsilon must be non-negative",
            ));
        }
        Ok(Self {
            tree_file: base.join(doc.tree),
            weight_sheets_file: base.join(doc.weight_sheets),
            ballots_file: base.join(doc.ballots),
            settings: EvaluationSettings {
                weight_policy: doc.policy.weights,
                ballot_policy: doc.policy.ballots,
                operator: doc.operator,
                tie_epsilon: doc.tie_epsilon,
            },
        })
    }

    /// Parses and validates the three input files.
    pub fn load(&self) -> Result<(IndexTree, Vec<WeightSheet>, Vec<FeedbackBallot>)> {
        let tree = io::parse_tree_file(&self.tree_file)?;
        let sheets = io::parse_weight_sheets(&self.weight_sheets_file, &tree)?;
        let ballots = io::parse_ballots(&self.ballots_file, &tree)?;
        Ok((tree, sheets, ballots))
    }
}

pub fn run_pipeline(bundle: &ProjectBundle) -> Result<(Verdict, ReportDocument)> {
    let (tree, sheets, ballots) = bundle.load()?;
    let outcome = evaluate(&tree, &sheets, &ballots, &bundle.settings)?;
    Ok((outcome.verdict, outcome.report))
}
