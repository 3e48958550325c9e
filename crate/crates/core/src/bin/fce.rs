use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fuzzy_eval::io::{parse_ballots, parse_tree_file, parse_weight_sheets};
use fuzzy_eval::{
    aggregate_weights, evaluate, fixtures, select_valid, CompositionOperator, Error,
    EvaluationSettings, FeedbackBallot, IndexTree, ProjectBundle, ReportDocument,
    ValidSubsetPolicy, WeightSheet,
};

/// Fuzzy comprehensive evaluation over a hierarchical index system.
///
/// Exit codes: 0 success, 2 parse error, 3 validation error, 4 computation error.
#[derive(Parser)]
#[command(name = "fce", version)]
struct Cli {
    /// Seed for random-k selection (applies to both policies)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Composition operator: weighted-average or max-min
    #[arg(long, global = true)]
    operator: Option<CompositionOperator>,
    /// Memberships within this distance of the maximum are reported as tied
    #[arg(long, global = true)]
    tie_epsilon: Option<f64>,
    /// Valid weight sheets: `all` or `random:K`
    #[arg(long, global = true)]
    policy_weights: Option<ValidSubsetPolicy>,
    /// Valid ballots: `all` or `random:K`
    #[arg(long, global = true)]
    policy_ballots: Option<ValidSubsetPolicy>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the tree, weight sheets and ballots
    Validate(Inputs),
    /// Print the weight table: raw scores, averages and normalized weights
    Weights(Inputs),
    /// Run the full evaluation and print the text report
    Evaluate {
        #[command(flatten)]
        inputs: Inputs,
        /// Write the structured JSON report here
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Do not print the text report
        #[arg(long, short)]
        quiet: bool,
    },
    /// Re-render the text report from a saved JSON report
    Report { file: PathBuf },
}

#[derive(Args)]
struct Inputs {
    /// Bundle manifest naming the input files and settings
    #[arg(long, conflicts_with_all = ["fixture", "tree"])]
    bundle: Option<PathBuf>,
    /// Use the bundled surveillance-system dataset
    #[arg(long)]
    fixture: bool,
    #[arg(long, requires_all = ["sheets", "ballots"])]
    tree: Option<PathBuf>,
    #[arg(long)]
    sheets: Option<PathBuf>,
    #[arg(long)]
    ballots: Option<PathBuf>,
}

struct Loaded {
    tree: IndexTree,
    sheets: Vec<WeightSheet>,
    ballots: Vec<FeedbackBallot>,
    settings: EvaluationSettings,
}

impl Cli {
    fn load(&self, inputs: &Inputs) -> Result<Loaded, Error> {
        let (tree, sheets, ballots, mut settings) = if let Some(path) = &inputs.bundle {
            let bundle = ProjectBundle::from_manifest(path)?;
            let (t, s, b) = bundle.load()?;
            (t, s, b, bundle.settings)
        } else if let (Some(t), Some(s), Some(b)) = (&inputs.tree, &inputs.sheets, &inputs.ballots)
        {
            let tree = parse_tree_file(t)?;
            let sheets = parse_weight_sheets(s, &tree)?;
            let ballots = parse_ballots(b, &tree)?;
            (tree, sheets, ballots, EvaluationSettings::default())
        } else {
            let d = fixtures::surveillance();
            (d.tree, d.sheets, d.ballots, EvaluationSettings::default())
        };

        if let Some(p) = self.policy_weights {
            settings.weight_policy = p;
        }
        if let Some(p) = self.policy_ballots {
            settings.ballot_policy = p;
        }
        if let Some(seed) = self.seed {
            settings.weight_policy = settings.weight_policy.with_seed(seed);
            settings.ballot_policy = settings.ballot_policy.with_seed(seed);
        }
        if let Some(op) = self.operator {
            settings.operator = op;
        }
        if let Some(eps) = self.tie_epsilon {
            settings.tie_epsilon = eps;
        }
        Ok(Loaded {
            tree,
            sheets,
            ballots,
            settings,
        })
    }

    fn run(&self) -> Result<(), Error> {
        match &self.command {
            Command::Validate(inputs) => {
                let l = self.load(inputs)?;
                println!(
                    "ok: {} groups, {} leaves, {} weight sheets, {} ballots",
                    l.tree.groups().len(),
                    l.tree.leaves().len(),
                    l.sheets.len(),
                    l.ballots.len()
                );
            }
            Command::Weights(inputs) => {
                let l = self.load(inputs)?;
                let valid = select_valid(&l.sheets, &l.settings.weight_policy)?;
                let weights = aggregate_weights(&valid, &l.tree)?;
                print!("{}", weight_table(&l.tree, &valid, &weights));
            }
            Command::Evaluate { inputs, out, quiet } => {
                let l = self.load(inputs)?;
                let outcome = evaluate(&l.tree, &l.sheets, &l.ballots, &l.settings)?;
                if let Some(path) = out {
                    std::fs::write(path, outcome.report.to_json()).map_err(|source| Error::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                }
                if !quiet {
                    print!("{}", outcome.report.to_text());
                }
            }
            Command::Report { file } => {
                let text = std::fs::read_to_string(file).map_err(|source| Error::Io {
                    path: file.display().to_string(),
                    source,
                })?;
                print!("{}", ReportDocument::from_json(&text)?.to_text());
            }
        }
        Ok(())
    }
}

fn weight_table(
    tree: &IndexTree,
    sheets: &[WeightSheet],
    weights: &indexmap::IndexMap<String, fuzzy_eval::WeightVector>,
) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = write!(out, "{:<6} {:<6}", "group", "index");
    for s in sheets {
        let _ = write!(out, " {:>6}", s.consultant_id);
    }
    let _ = writeln!(out, " {:>8} {:>8}", "avg", "norm");
    for group in tree.groups() {
        let w = &weights[&group.id];
        for (k, member) in w.member_ids.iter().enumerate() {
            let _ = write!(out, "{:<6} {:<6}", group.id, member);
            for s in sheets {
                let score = s.score(&group.id, member).unwrap_or(f64::NAN);
                let _ = write!(out, " {score:>6}");
            }
            let _ = writeln!(
                out,
                " {:>8} {:>8}",
                short(w.averages[k]),
                short(w.normalized[k])
            );
        }
    }
    out
}

fn short(v: f64) -> String {
    let s = format!("{v:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                Error::Invalid { context, report } => {
                    eprintln!("error[{}]: {context}", err.stage());
                    for v in report {
                        eprintln!("  - {v}");
                    }
                }
                _ => eprintln!("error[{}]: {err}", err.stage()),
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
