//! Command-line front end for the handinput pipeline.
//!
//! * `run` processes a frame source in batch and writes JSON-lines events,
//! * `calibrate` learns a skin color range and saves it for `--range-file`,
//! * `serve` runs the live service on a replayed frame source,
//! * `fixtures` renders the bundled synthetic frame sets,
//! * `default-config` prints the default configuration.
//!
//! Exit codes: 0 on success, 2 for an invalid configuration, 3 when the
//! frame source cannot be found or opened, 1 for anything else.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use handinput::pipeline::Mode;
use handinput::segmentation::Method;

mod fixtures;
mod prepare;
mod run;

pub use fixtures::write_fixtures;
pub use prepare::Prepared;

#[derive(Debug, Parser)]
#[command(name = "handinput", version, about = "Hand segmentation and gesture input over frame streams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Process a frame source and write one JSON event per line.
    Run(RunArgs),
    /// Learn a skin color range from the central disc of some frames.
    Calibrate(CalibrateArgs),
    /// Serve the live pipeline over HTTP and WebSocket.
    Serve(ServeArgs),
    /// Render the synthetic fixture frames.
    Fixtures(FixturesArgs),
    /// Print the default pipeline configuration as JSON.
    DefaultConfig,
}

/// Flags shared by `run` and `serve`.
#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    /// Directory of frames (read in file-name order), a single image, or `camera:<id>`.
    #[arg(long)]
    pub input: String,
    /// JSON pipeline configuration; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub method: Option<Method>,
    /// Threshold for `--method static`.
    #[arg(long)]
    pub thresh: Option<u8>,
    /// Color range JSON written by `calibrate`.
    #[arg(long)]
    pub range_file: Option<PathBuf>,
    /// Background image for `--method background_sub`.
    #[arg(long)]
    pub background: Option<PathBuf>,
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub dwell_frames: Option<u32>,
    #[arg(long)]
    pub dwell_radius: Option<f64>,
    /// Use the first N frames of the input to calibrate the skin range.
    /// They produce no events.
    #[arg(long)]
    pub calibrate_frames: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Write annotated frames as PNG files into this directory.
    #[arg(long)]
    pub emit_annotated: Option<PathBuf>,
    /// Event output file, or `-` for standard output.
    #[arg(long)]
    pub events: Option<String>,
    /// Also print per-frame pipeline diagnostics on standard error.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub out: PathBuf,
    /// How many frames to use; all of them by default.
    #[arg(long)]
    pub frames: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub bind: String,
    #[arg(long, default_value_t = 30.0)]
    pub fps: f64,
    /// Stop after one pass over the input instead of looping.
    #[arg(long)]
    pub once: bool,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 320)]
    pub width: u32,
    #[arg(long, default_value_t = 240)]
    pub height: u32,
}

/// Why a command failed.
#[derive(Debug)]
pub enum Failure {
    ConfigInvalid(String),
    SourceNotFound(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::ConfigInvalid(_) => 2,
            Failure::SourceNotFound(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::ConfigInvalid(m) => write!(f, "invalid configuration: {m}"),
            Failure::SourceNotFound(m) | Failure::Other(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

pub fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run(args) => run::run(&args),
        Command::Calibrate(args) => run::calibrate(&args),
        Command::Serve(args) => run::serve(&args),
        Command::Fixtures(args) => {
            let n = write_fixtures(&args.out, args.width, args.height)?;
            eprintln!("wrote {n} frames under {}", args.out.display());
            Ok(())
        }
        Command::DefaultConfig => {
            println!("{}", handinput::PipelineConfig::default().to_json_pretty());
            Ok(())
        }
    }
}
