use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod selftest;

/// Exact inference for generative logic models.
#[derive(Debug, Parser)]
#[command(name = "genlog", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Answer p(target | given) at a chosen mu.
    Query(QueryArgs),
    /// Emit `mu,probability` rows over [0, 1] plus the limit at mu -> 1.
    Sweep(SweepArgs),
    /// Check classical or possible-model consequence.
    Consequence(ConsequenceArgs),
    /// Summarise a dataset or prior and self-test the engine on it.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct Source {
    /// Dataset document (JSON, or CSV by extension).
    #[arg(
        short = 'd',
        long,
        conflicts_with = "prior",
        required_unless_present = "prior"
    )]
    pub dataset: Option<PathBuf>,
    /// Explicit prior document.
    #[arg(long)]
    pub prior: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub source: Source,
    /// Premises separated by `;`.
    #[arg(long, visible_alias = "premises", default_value = "")]
    pub given: String,
    #[arg(long, visible_alias = "conclusion")]
    pub target: String,
    /// `1`, `limit`, `p/q` or a decimal in [0, 1].
    #[arg(long, default_value = "1")]
    pub mu: String,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, visible_alias = "premises", default_value = "")]
    pub given: String,
    #[arg(long, visible_alias = "conclusion")]
    pub target: String,
    /// Number of equally spaced points, endpoints included.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Classical,
    Possible,
}

#[derive(Debug, Args)]
pub struct ConsequenceArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, visible_alias = "given")]
    pub premises: String,
    #[arg(long, visible_alias = "target")]
    pub conclusion: Option<String>,
    #[arg(long, value_enum, default_value = "classical")]
    pub relation: RelationArg,
    /// Also print the maximal consistent (or possible) subsets and approximate models.
    #[arg(long)]
    pub explain: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(commands::EXIT_ERROR),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Query(args) => commands::query(args, &mut out),
        Command::Sweep(args) => commands::sweep(args, &mut out),
        Command::Consequence(args) => commands::consequence(args, &mut out),
        Command::Check(args) => commands::check(args, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_ERROR)
        }
    }
}
