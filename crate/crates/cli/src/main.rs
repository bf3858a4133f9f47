//! `herald` command-line tool.

mod commands;
mod config;
mod record;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ExperimentConfig, SweepSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Compute(#[from] herald::Error),
    #[error("cannot write output: {0}")]
    Output(String),
    #[error("classification disagreement: {0}")]
    Concordance(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Output(_) => 3,
            CliError::Concordance(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "herald", version, about = "Heralded symmetric-state simulator")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Experiment configuration (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Read angles in the config and sweep as degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// Monte Carlo sample count (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    samples: Option<usize>,
    /// RNG seed (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Window-width sweep START:STOP:COUNT (overrides the config).
    #[arg(long, global = true, value_name = "SPEC")]
    sweep: Option<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Verb {
    /// Forward-map a polarizer configuration to its heralded state.
    Simulate,
    /// Find polarizers that herald a target state.
    Synthesize,
    /// Compare configuration-based and state-based class for n = 3.
    Classify,
    /// Print the cascade pyramid and its edge list.
    Pyramid,
    /// Monte Carlo fidelity under a finite detection window.
    Fidelity,
}

fn load(cli: &Cli) -> Result<ExperimentConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    if let Some(s) = &cli.sweep {
        cfg.sweep = Some(SweepSpec::parse(s)?);
    }
    if cli.degrees {
        cfg.degrees_to_radians();
    }
    if let Some(s) = &cfg.sweep {
        s.validate()?;
    }
    if cli.samples.is_some() {
        cfg.samples = cli.samples;
    }
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_record(out: Option<&Path>, rec: &record::ResultRecord) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(rec).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load(cli)?;
    let out = cli.out.as_deref();
    match cli.verb {
        Verb::Simulate => emit_record(out, &commands::simulate(cfg)?),
        Verb::Synthesize => emit_record(out, &commands::synthesize_cmd(cfg)?),
        Verb::Classify => {
            let (rec, agree) = commands::classify(cfg)?;
            emit_record(out, &rec)?;
            if !agree {
                let c = rec.classification.as_ref().expect("classify fills classification");
                return Err(CliError::Concordance(format!(
                    "configuration predicts {}, state measures {}",
                    c.predicted_class, c.measured_class
                )));
            }
            Ok(())
        }
        Verb::Pyramid => {
            let (tree, csv) = commands::pyramid(&cfg)?;
            match out {
                Some(p) => {
                    emit(None, &tree)?;
                    emit(Some(p), &csv)
                }
                None => emit(None, &format!("{tree}\n{csv}")),
            }
        }
        Verb::Fidelity => {
            let rec = commands::fidelity_cmd(cfg)?;
            emit_record(out, &rec)?;
            if let (Some(points), Some(p)) = (&rec.sweep, out) {
                let mut csv_path = p.as_os_str().to_owned();
                csv_path.push(".sweep.csv");
                emit(Some(Path::new(&csv_path)), &record::sweep_csv(points))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("herald: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
