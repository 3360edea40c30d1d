//! `anosovlab`: one binary whose subcommand tree mirrors the library modules.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 on usage, parse or
//! input errors (nothing is written to the output in that case).

mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{ChordsCmd, FormsCmd, HomologyCmd, HwCmd, HyperbolicCmd, ShCmd, SuiteCmd, ToralCmd, TorusCurveCmd};
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "anosovlab", version, about = "Computations and checks for Anosov Liouville domains")]
struct Cli {
    /// Seed for every randomised step [env: ANOSOVLAB_SEED] [default: 7]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output encoding [default: json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// TOML file with `seed`, `format`, `output` and `timing` keys; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock times (makes the output time-dependent)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Periodic points and orbits of a hyperbolic toral automorphism
    #[command(subcommand)]
    Toral(ToralCmd),
    /// Chord lattices and rational fibers
    #[command(subcommand)]
    Chords(ChordsCmd),
    /// Generator counts of wrapped Floer complexes
    #[command(subcommand)]
    Hw(HwCmd),
    /// Rank data of symplectic cohomology
    #[command(subcommand)]
    Sh(ShCmd),
    /// Integral cohomology, Hochschild tables and product admissibility
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Numerical checks of contact and Liouville forms
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Geodesics, orthogeodesics and triangles in the upper half-plane
    #[command(subcommand)]
    Hyperbolic(HyperbolicCmd),
    /// Exact Lagrangian tori from plane curves
    #[command(name = "torus-curve", subcommand)]
    TorusCurve(TorusCurveCmd),
    /// Check batteries, including the acceptance suite
    #[command(subcommand)]
    Suite(SuiteCmd),
}

fn run(cli: Cli) -> anyhow::Result<(Vec<u8>, Option<PathBuf>, bool)> {
    let settings = config::resolve(cli.seed, cli.format, cli.output.clone(), cli.timing, cli.config.as_deref())?;
    let start = Instant::now();
    let ctx = commands::Context { seed: settings.seed, timing: settings.timing };
    let (name, params, outcome) = match &cli.command {
        Command::Toral(c) => c.run(&ctx)?,
        Command::Chords(c) => c.run(&ctx)?,
        Command::Hw(c) => c.run(&ctx)?,
        Command::Sh(c) => c.run(&ctx)?,
        Command::Homology(c) => c.run(&ctx)?,
        Command::Forms(c) => c.run(&ctx)?,
        Command::Hyperbolic(c) => c.run(&ctx)?,
        Command::TorusCurve(c) => c.run(&ctx)?,
        Command::Suite(c) => c.run(&ctx)?,
    };
    let wall = settings.timing.then(|| start.elapsed().as_secs_f64());
    let mut params = params;
    if let Some(map) = params.as_object_mut() {
        map.insert("seed".into(), settings.seed.into());
    }
    let report = Report::new(name, params, &outcome, wall);
    let bytes = match settings.format {
        Format::Json => report::to_json(&report)?,
        Format::Csv => report::to_csv(&outcome.table)?,
    };
    Ok((bytes, settings.output, report.pass))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version go to stdout with status 0; usage errors exit 2
            e.exit();
        }
    };
    match run(cli) {
        Ok((bytes, output, pass)) => {
            let written = match &output {
                Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout().lock().write_all(&bytes).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
