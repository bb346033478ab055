use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use mlsfr_cli::commands;
use mlsfr_cli::output::{emit, render, Format, Report};
use mlsfr_cli::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "mlsfr",
    version,
    about = "Multi-level soft frequency reuse evaluator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edge efficiency against the first-ring power ratio.
    Fig5(Common),
    /// Per-level efficiency curves and equal-rate operating points.
    Fig6(Common),
    /// Equal-rate bandwidth allocation for every scheme.
    Table4(Common),
    /// Derive γ_min from the design anchors and build the level table.
    Design(Common),
    /// Greedy first-fit assignment of UE requests.
    Alloc(Common),
    /// Compare the two pairing patterns for two cells.
    Pairing(Common),
}

#[derive(Args)]
struct Common {
    /// JSON scenario file; built-in defaults when omitted.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn write<R: Report>(report: R, common: &Common, scenario: &Scenario) -> Result<()> {
    let format = common.format.unwrap_or_else(|| report.default_format());
    let bytes = render(&report, format)?;
    let out = common
        .out
        .clone()
        .or_else(|| scenario.out.as_ref().map(PathBuf::from));
    emit(&bytes, out.as_deref())
}

fn load(path: Option<&Path>) -> Result<Scenario> {
    match path {
        Some(p) => Scenario::load(p),
        None => Ok(Scenario::default()),
    }
}

fn run(cli: Cli) -> Result<()> {
    let common = match &cli.command {
        Command::Fig5(c)
        | Command::Fig6(c)
        | Command::Table4(c)
        | Command::Design(c)
        | Command::Alloc(c)
        | Command::Pairing(c) => c,
    };
    let s = load(common.scenario.as_deref())?;
    match cli.command {
        Command::Fig5(_) => write(commands::run_fig5(&s)?, common, &s),
        Command::Fig6(_) => write(commands::run_fig6(&s)?, common, &s),
        Command::Table4(_) => write(commands::run_table4(&s)?, common, &s),
        Command::Design(_) => write(commands::run_design(&s)?, common, &s),
        Command::Alloc(_) => write(commands::run_alloc(&s)?, common, &s),
        Command::Pairing(_) => write(commands::run_pairing(&s)?, common, &s),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
