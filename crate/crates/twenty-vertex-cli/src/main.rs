mod angle;
mod count;
mod curve;
mod output;
mod sample;
mod svg;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twenty_vertex::{BoundaryKind, Caps};

/// Counting, verification, arctic curves and sampling for the twenty-vertex model on a triangle.
#[derive(Parser)]
#[command(name = "twentyv", version)]
struct Cli {
    /// Size caps, e.g. `brute=8,transfer=13,det=20`.
    #[arg(long, env = "TWENTYV_CAPS", global = true, default_value = "")]
    caps: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total and refined counts of configurations, cross-checked over every route within the caps.
    Count(count::CountArgs),
    /// Run the identity suite.
    Verify(verify::VerifyArgs),
    /// Arctic-curve branches for a parameter triple.
    Curve(curve::CurveArgs),
    /// Exact uniform samples, rendered or histogrammed.
    Sample(sample::SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Clone)]
pub struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// What a subcommand produced: a document to write and whether every check in it passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
    pub failure: Option<serde_json::Value>,
}

impl Outcome {
    pub fn ok(body: String) -> Self {
        Outcome { body, passed: true, failure: None }
    }
}

pub fn parse_bc(s: &str) -> Result<BoundaryKind, String> {
    s.parse()
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, Option<PathBuf>)> {
    let caps = Caps::default().with_overrides(&cli.caps).map_err(anyhow::Error::msg)?;
    Ok(match cli.command {
        Command::Count(a) => (count::run(&a, &caps)?, a.out.out),
        Command::Verify(a) => (verify::run(&a, &caps)?, a.out.out),
        Command::Curve(a) => (curve::run(&a)?, a.out.out),
        Command::Sample(a) => (sample::run(&a, &caps)?, a.out.out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            if let Err(e) = output::write(out.as_deref(), &outcome.body) {
                eprintln!("{}", serde_json::json!({ "status": "error", "error": format!("{e:#}") }));
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                let record = outcome.failure.unwrap_or_else(|| serde_json::json!({ "status": "fail" }));
                eprintln!("{record}");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "status": "error", "error": format!("{e:#}") }));
            ExitCode::from(2)
        }
    }
}
