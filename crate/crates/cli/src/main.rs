//! `mss`: split a file into threshold shares and public parities, recover it,
//! inspect artifacts and audit secrecy at toy sizes.
//!
//! Exit codes: 0 success, 2 invalid flags, 3 I/O failure or corrupt
//! artifact, 4 configuration rejected, 5 not enough shares, 6 artifacts from
//! different packages, 7 secrecy audit found leakage, 8 audit too large to
//! enumerate.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "mss", version, about = "Threshold secret sharing with public parities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a secret into share files and a public parity file.
    Split(SplitArgs),
    /// Recover a secret from a quorum of shares and the public file.
    Recover(RecoverArgs),
    /// Print the header of an artifact and check its CRC.
    Inspect { file: PathBuf },
    /// Exhaustively check that a coalition below the threshold learns nothing.
    Audit(AuditArgs),
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[arg(long)]
    participants: usize,
    #[arg(long)]
    threshold: usize,
    #[arg(long, value_parser = backend_names())]
    backend: String,
    /// Field bit-width m (rs only).
    #[arg(long, conflicts_with = "prime")]
    field_bits: Option<usize>,
    /// Array prime p (evenodd, grdp).
    #[arg(long)]
    prime: Option<usize>,
    /// Bytes per coefficient lane (evenodd, grdp).
    #[arg(long)]
    lane_bytes: Option<usize>,
}

#[derive(Args, Debug)]
struct SplitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    out_dir: PathBuf,
    #[command(flatten)]
    code: CodeArgs,
    /// Hex seed for reproducible output. Never use for real secrets.
    #[arg(long, requires = "insecure_deterministic")]
    seed: Option<String>,
    #[arg(long)]
    insecure_deterministic: bool,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    public: PathBuf,
    #[arg(long = "share", required = true, num_args = 1..)]
    shares: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Comma-separated participant indices.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    adversary: Vec<usize>,
}

fn backend_names() -> clap::builder::PossibleValuesParser {
    let names: Vec<&'static str> = mss_core::registry::Registry::builtin().names().collect();
    clap::builder::PossibleValuesParser::new(names)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Split(args) => commands::split(args),
        Command::Recover(args) => commands::recover(args),
        Command::Inspect { file } => commands::inspect(&file),
        Command::Audit(args) => commands::audit(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("mss: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
