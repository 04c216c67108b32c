//! `altiset`: significance analysis of relations and datasets.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

/// Exit status for malformed command lines.
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "altiset", version, about = "Significant elements of relations, orders and datasets")]
struct Cli {
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Leave the timestamp out of the metadata block.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Altiset of a relation or of a system of linearly induced orders.
    Altiset(AltisetArgs),
    /// Successive altisets, significance indices and chain colorings.
    Layers(LayersArgs),
    /// Indices of increasingness and decreasingness of a planar point set.
    Correlate(CorrelateArgs),
    /// Significant members of a family of subsets of a valued ground set.
    Collective(CollectiveArgs),
    /// Summits that are both high and close to a reference point.
    Skyline(SkylineArgs),
    /// Evolution of a valuation driven by Voronoi measures.
    Evolve(EvolveArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["relation", "system", "csv"])))]
struct AltisetArgs {
    /// Relation JSON: {"size", "labels"?, "pairs"}.
    #[arg(long, value_name = "FILE")]
    relation: Option<PathBuf>,

    /// Order system JSON: {"size", "orders": [{"keys", "direction"}]}.
    #[arg(long, value_name = "FILE")]
    system: Option<PathBuf>,

    /// CSV table with a header row; orders are chosen with --gain/--price.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,

    /// CSV column (name or 0-based index) whose larger values are better.
    #[arg(long, value_name = "COLUMN", requires = "csv")]
    gain: Vec<String>,

    /// CSV column (name or 0-based index) whose smaller values are better.
    #[arg(long, value_name = "COLUMN", requires = "csv")]
    price: Vec<String>,

    /// CSV column holding row labels.
    #[arg(long, value_name = "COLUMN", requires = "csv")]
    label: Option<String>,

    /// Restrict to these elements (comma-separated indices or labels).
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    subset: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct LayersArgs {
    /// Relation JSON: {"size", "labels"?, "pairs"}.
    #[arg(long, value_name = "FILE")]
    relation: PathBuf,

    /// Chain term over u/λ (or l), e.g. "ulu"; applied right to left.
    #[arg(long, value_name = "TERM")]
    chain: Option<String>,
}

#[derive(Args, Debug)]
struct CorrelateArgs {
    /// CSV with two numeric columns x, y; header optional.
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CollectiveMethod {
    /// Maxima of the threshold-count quotient.
    Quotient,
    /// Pairwise strict-domination elimination.
    Pairwise,
}

#[derive(Args, Debug)]
struct CollectiveArgs {
    /// JSON: {"elements", "h", "family"}.
    input: PathBuf,

    #[arg(long, value_enum, default_value = "quotient")]
    method: CollectiveMethod,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SkylineMethod {
    Oracle,
    Circular,
    Contour,
    Recursive,
    /// Strict records of a time series (x is time).
    Records,
}

#[derive(Args, Debug)]
struct SkylineArgs {
    /// CSV with columns x,h (real line) or x,y,h (plane); header optional.
    input: PathBuf,

    /// Reference point X or X,Y. Optional for --method records.
    #[arg(long = "ref", value_name = "X[,Y]", value_delimiter = ',', num_args = 1..=2, allow_negative_numbers = true)]
    reference: Option<Vec<f64>>,

    #[arg(long, value_enum, default_value = "oracle")]
    method: SkylineMethod,

    /// Block size for --method recursive.
    #[arg(long, value_name = "N", default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    block_size: u64,

    /// Real-line summits must lie at or left of the reference point.
    #[arg(long)]
    left_restricted: bool,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// CSV with columns x,y,h where h is the initial valuation.
    input: PathBuf,

    /// Grid resolution WxH (or N for NxN).
    #[arg(long, value_name = "WxH", env = "ALTISET_GRID", value_parser = output::parse_grid)]
    grid: Option<(usize, usize)>,

    /// Inflation of the summit bounding box per side, as a fraction of its span.
    #[arg(long, value_name = "P", default_value_t = altiset::domains::DEFAULT_INFLATE, value_parser = output::parse_inflate)]
    inflate: f64,

    #[arg(long, value_name = "N", default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: u64,

    /// Also write every valuation vector and the stop index here.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let doc = match &cli.command {
        Command::Altiset(args) => commands::altiset(args)?,
        Command::Layers(args) => commands::layers(args)?,
        Command::Correlate(args) => commands::correlate(args)?,
        Command::Collective(args) => commands::collective(args)?,
        Command::Skyline(args) => commands::skyline(args)?,
        Command::Evolve(args) => commands::evolve(args)?,
    };
    output::write(doc, cli.output.as_deref(), !cli.no_timestamp)
}
