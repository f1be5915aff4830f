//! Command-line front end: dictionary building and validation, stitching,
//! cutoff estimation, pose evaluation and frame export.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit codes shared by every subcommand.
pub const EXIT_OK: u8 = 0;
/// Some sequences or entries failed; the rest were processed.
pub const EXIT_PARTIAL: u8 = 1;
/// Bad flags, unreadable files, invalid formats.
pub const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(
    name = "signstitch",
    version,
    about = "Stitches dictionary signs into continuous pose sequences"
)]
struct Cli {
    /// Print more progress detail (repeat for debug output).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or validate sign dictionary files.
    Dict {
        #[command(subcommand)]
        action: DictAction,
    },
    /// Run the stitching pipeline over a script file.
    Stitch(commands::stitch::StitchArgs),
    /// Estimate per-sequence filter cutoffs against original pose files.
    EstimateCutoff(commands::cutoff::CutoffArgs),
    /// Compare produced pose files against references with DTW-MJE.
    Eval(commands::eval::EvalArgs),
    /// Export 2D front-view projections of a pose file for plotting.
    ExportFrames(commands::export::ExportArgs),
}

#[derive(Subcommand)]
enum DictAction {
    /// Validate and normalize raw entries into a dictionary file.
    Build(commands::dict::BuildArgs),
    /// Check an existing dictionary file against a skeleton.
    Validate(commands::dict::ValidateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Dict { action } => match action {
            DictAction::Build(args) => commands::dict::build(args),
            DictAction::Validate(args) => commands::dict::validate(args),
        },
        Command::Stitch(args) => commands::stitch::run(args),
        Command::EstimateCutoff(args) => commands::cutoff::run(args),
        Command::Eval(args) => commands::eval::run(args),
        Command::ExportFrames(args) => commands::export::run(args),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

/// Standard pipeline input paths shared by `stitch` and `estimate-cutoff`.
#[derive(Debug, clap::Args)]
pub struct PipelineInputs {
    /// Skeleton definition file (JSON).
    #[arg(long)]
    pub skeleton: Option<PathBuf>,
    /// Sign dictionary file (JSON lines).
    #[arg(long)]
    pub signs: Option<PathBuf>,
    /// Face dictionary file (JSON lines).
    #[arg(long)]
    pub faces: Option<PathBuf>,
    /// Word embedding table (text).
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Script file: one record per sequence (JSON lines).
    #[arg(long)]
    pub script: Option<PathBuf>,
}
