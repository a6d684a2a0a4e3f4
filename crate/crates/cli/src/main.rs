use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "superq", version, about = "Quadratic and symplectic Lie superalgebras over Q(√2)")]
struct Cli {
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized sweeps. SUPERQ_SEED takes precedence.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra file and verify its forms.
    Check { file: PathBuf },
    /// Structure report: series, nilpotency, filiform flag, derivations.
    Analyze { file: PathBuf },
    /// Superderivations of the given parity, optionally skew for form_B.
    Derivations {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(long)]
        skew: bool,
    },
    /// Decide whether some even skew derivation is invertible.
    SymplecticSearch { file: PathBuf },
    /// Apply one or more extension specs to an algebra.
    Extend { file: PathBuf, spec_file: PathBuf },
    /// Decompose a filiform-type quadratic symplectic algebra.
    Peel { file: PathBuf },
    /// Named algebras and families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the full regression suite.
    VerifyPaper,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries with their parameters.
    List,
    /// Print an entry as an algebra file.
    Emit {
        name: String,
        /// Parameter override, `k=v` with a scalar value.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
    },
}

fn seed(flag: u64) -> u64 {
    std::env::var("SUPERQ_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(flag)
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let seed = seed(cli.seed);
    let outcome = match cli.command {
        Command::Check { file } => commands::check(echo, &file),
        Command::Analyze { file } => commands::analyze(echo, &file),
        Command::Derivations { file, parity, skew } => commands::derivations(echo, &file, parity, skew),
        Command::SymplecticSearch { file } => commands::symplectic_search(echo, &file, seed),
        Command::Extend { file, spec_file } => commands::extend(echo, &file, &spec_file),
        Command::Peel { file } => commands::peel(echo, &file),
        Command::Catalog { action: CatalogAction::List } => commands::catalog_list(echo),
        Command::Catalog { action: CatalogAction::Emit { name, params } } => {
            commands::catalog_emit(echo, &name, &params)
        }
        Command::VerifyPaper => commands::verify_paper(echo, seed),
    };
    match outcome {
        commands::Output::Report(r) => {
            let text = match cli.format {
                Format::Json => r.to_json() + "\n",
                Format::Text => r.to_text(),
            };
            emit(&text);
            ExitCode::from(r.exit_code as u8)
        }
        commands::Output::Raw(text) => {
            emit(&(text + "\n"));
            ExitCode::SUCCESS
        }
    }
}
