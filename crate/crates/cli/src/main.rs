use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use owalink::conditions::{default_bound, DEFAULT_SEARCH_BOUND};
use owalink::io::{read_matrix_csv, read_points_csv};
use owalink::report::{audit_json, comparison_json, inversion_report_json, witness_json};
use owalink::{
    audit, cluster, compare_strategies, representability_witness, CoefficientSequence64, Dataset64,
    Error, LinkageMethod64, OwaLinkageSpec64, Strategy, WitnessBudget,
};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "owalink",
    version,
    about = "Hierarchical clustering with OWA linkages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a dataset and write the linkage matrix as CSV.
    Cluster {
        #[command(flatten)]
        run: RunArgs,
        /// Also write the dendrogram in Newick format to this file.
        #[arg(long)]
        newick: Option<PathBuf>,
    },
    /// Cluster a dataset and report height inversions as JSON.
    Inversions {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1e-12)]
        epsilon: f64,
    },
    /// Audit a largest-first coefficient sequence against the monotonicity conditions.
    Check {
        /// Sequence such as `1,0.5,0.25;zero` or `1;repeat`.
        sequence: String,
        #[arg(long = "bound-m")]
        bound_m: Option<usize>,
        #[arg(long = "bound-n", default_value_t = DEFAULT_SEARCH_BOUND)]
        bound_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for two configurations showing an OWA linkage has no Lance-Williams form.
    Witness {
        /// `hi:<sequence>` or `lo:<sequence>`.
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare recompute and incremental strategies on one dataset.
    Compare {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Points)]
    format: Format,
    /// single|complete|average|weighted|centroid|median|ward|owa:<hi|lo>:<sequence>
    #[arg(long)]
    method: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Incremental)]
    strategy: StrategyArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Points,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Recompute,
    Incremental,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Recompute => Strategy::Recompute,
            StrategyArg::Incremental => Strategy::Incremental,
        }
    }
}

enum Failure {
    Input(String),
    Config(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Config(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Config(m) | Failure::Internal(m) => m,
        }
    }
}

fn classify(err: Error) -> Failure {
    let msg = err.to_string();
    match err {
        Error::Empty(_)
        | Error::DimensionMismatch { .. }
        | Error::NonFinite { .. }
        | Error::NotSquare { .. }
        | Error::Asymmetric { .. }
        | Error::NonZeroDiagonal { .. }
        | Error::NegativeDistance { .. }
        | Error::CondensedLength { .. }
        | Error::Parse { .. }
        | Error::Io(_) => Failure::Input(msg),
        Error::InvalidSequence(_)
        | Error::InvalidMethod(_)
        | Error::CoordinatesRequired { .. }
        | Error::Unsupported(_)
        | Error::InvalidArgument(_) => Failure::Config(msg),
        Error::ZeroNormalizer { .. }
        | Error::ZeroPartialSum { .. }
        | Error::Unsorted(_)
        | Error::InvalidClusters(_) => Failure::Internal(msg),
    }
}

fn load(run: &RunArgs) -> Result<Dataset64, Failure> {
    let path = &run.input;
    let file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let reader = BufReader::new(file);
    let data = match run.format {
        Format::Points => read_points_csv(reader).map(Dataset64::from_points),
        Format::Matrix => read_matrix_csv(reader).map(Dataset64::from_distances),
    };
    data.map_err(|e| match classify(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn method(run: &RunArgs) -> Result<LinkageMethod64, Failure> {
    LinkageMethod64::parse(&run.method, run.strategy.into()).map_err(classify)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<(), Failure> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cluster { run, newick } => {
            let method = method(&run)?;
            let data = load(&run)?;
            let tree = cluster(&data, &method).map_err(classify)?;
            if let Some(path) = newick {
                emit(Some(&path), &tree.to_newick())?;
            }
            emit(run.out.as_deref(), &tree.to_linkage_csv())
        }
        Command::Inversions { run, epsilon } => {
            if !(epsilon.is_finite() && epsilon >= 0.0) {
                return Err(Failure::Config(format!(
                    "epsilon must be finite and nonnegative, got {epsilon}"
                )));
            }
            let method = method(&run)?;
            let data = load(&run)?;
            let tree = cluster(&data, &method).map_err(classify)?;
            let report = tree.detect_inversions(epsilon);
            emit_json(run.out.as_deref(), &inversion_report_json(&report))
        }
        Command::Check {
            sequence,
            bound_m,
            bound_n,
            out,
        } => {
            let text = match sequence.split_once(':') {
                Some(("hi", rest)) => rest,
                Some(("lo", _)) => {
                    return Err(Failure::Config(
                        "the conditions apply to largest-first sequences only".into(),
                    ))
                }
                _ => sequence.as_str(),
            };
            let c: CoefficientSequence64 = text.parse().map_err(classify)?;
            let m = bound_m.unwrap_or_else(|| default_bound(&c));
            let report = audit(&c, m, bound_n).map_err(classify)?;
            emit_json(out.as_deref(), &audit_json(&report))?;
            if report.consistent() {
                Ok(())
            } else {
                Err(Failure::Internal("audit cross-checks failed".into()))
            }
        }
        Command::Witness { spec, out } => {
            let parsed: OwaLinkageSpec64 = spec.parse().map_err(classify)?;
            let w =
                representability_witness(&parsed, WitnessBudget::default()).map_err(classify)?;
            emit_json(out.as_deref(), &witness_json(&spec, w.as_ref()))
        }
        Command::Compare { run } => {
            let method = method(&run)?;
            let data = load(&run)?;
            let cmp = compare_strategies(&data, &method).map_err(classify)?;
            emit_json(run.out.as_deref(), &comparison_json(&run.method, &cmp))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("owalink: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(_) => ExitCode::from(4),
    }
}
