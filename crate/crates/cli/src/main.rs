//! `relsel` — build, query, and benchmark relative string indexes.

mod cmd;
mod output;
mod seqio;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

/// Exit code for malformed invocations.
const EXIT_USAGE: i32 = 1;
/// Exit code for data problems (missing files, corrupt indexes, invalid
/// sequences).
const EXIT_DATA: i32 = 2;

#[derive(Parser)]
#[command(name = "relsel", version, about)]
struct Cli {
    /// Output format for reports and records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Plain index over the target text.
    #[value(name = "plain-fm")]
    PlainFm,
    /// Target stored relative to a reference, rank queries only.
    #[value(name = "relative-fm")]
    RelativeFm,
    /// Relative index plus the select-side structures.
    #[value(name = "relative-fm+select")]
    RelativeFmSelect,
    /// Relative select structure over the raw strings, no transform.
    #[value(name = "relative-select")]
    RelativeSelect,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum QueryKind {
    Lf,
    Psi,
    PsiBinary,
    Select,
    Rank,
    Access,
}

impl QueryKind {
    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Lf => "lf",
            QueryKind::Psi => "psi",
            QueryKind::PsiBinary => "psi-binary",
            QueryKind::Select => "select",
            QueryKind::Rank => "rank",
            QueryKind::Access => "access",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded sequence pair with a known alignment.
    Mutate(cmd::mutate::Args),
    /// Build an index file from sequence files.
    Build(cmd::build::Args),
    /// Run a batch of queries against an index file.
    Query(cmd::query::Args),
    /// End-to-end benchmark: generate, build every mode, verify, time.
    Bench(cmd::bench::Args),
    /// Burrows-Wheeler transforms of a text, forward and inverse.
    Bwt(cmd::bwt::Args),
    /// Edge-BWT of a string's order-k de Bruijn graph.
    Boss(cmd::boss::Args),
    /// Print the components of an index file.
    Dump(cmd::dump::Args),
}

/// Command failures, split by exit code.
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<relsel::Error> for CliError {
    fn from(e: relsel::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; everything else is
            // a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = output::Output::new(cli.format);
    let result = match cli.command {
        Command::Mutate(args) => cmd::mutate::run(args, &out),
        Command::Build(args) => cmd::build::run(args, &out),
        Command::Query(args) => cmd::query::run(args, &out),
        Command::Bench(args) => cmd::bench::run(args, &out),
        Command::Bwt(args) => cmd::bwt::run(args, &out),
        Command::Boss(args) => cmd::boss::run(args, &out),
        Command::Dump(args) => cmd::dump::run(args, &out),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(EXIT_USAGE);
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(EXIT_DATA);
        }
    }
}
