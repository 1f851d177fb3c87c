//! Command-line front end for the `bevholt` library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use bevholt::figures::figure;
use clap::{Parser, Subcommand};

use crate::config::{BackendChoice, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "bevholt", version, about = "Simulate and analyse z(n+k) = z(n) / (A(n) + B(n) z(n))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "figure")]
    pub config: Option<PathBuf>,

    /// Use the built-in configuration of figure N (1-6) instead of a file.
    #[arg(long, global = true, value_name = "N")]
    pub figure: Option<u8>,

    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendChoice>,

    /// Number of terms z_0 .. z_{N-1}.
    #[arg(long, global = true, value_name = "N")]
    pub horizon: Option<usize>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,

    /// Relative tolerance for the floating backends.
    #[arg(long, global = true, value_name = "EPS")]
    pub tolerance: Option<f64>,

    /// Print the effective configuration as TOML and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Iterate the recurrence and write the trajectory.
    Simulate,
    /// Check the closed-form solutions against iteration.
    Compare,
    /// Evaluate a symmetry family's invariance residual over a grid.
    Symmetry,
    /// Classify the equilibria of a constant-coefficient model.
    Stability,
    /// Detect the minimal period of a trajectory.
    Period,
    /// Regenerate the data of the six built-in figures.
    Figures,
}

impl Cli {
    /// The configuration selected by `--config` or `--figure`, with the
    /// command-line overrides applied.
    pub fn run_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match (&self.config, self.figure) {
            (Some(path), _) => RunConfig::load(path)?,
            (None, Some(id)) => RunConfig::from_figure(
                figure(id).ok_or_else(|| CliError::Config(format!("no figure {id}; choose 1-6")))?,
            ),
            (None, None) => {
                return Err(CliError::Config("pass --config <PATH> or --figure <N>".into()))
            }
        };
        if let Some(b) = self.backend {
            cfg.backend = Some(b);
        }
        if let Some(h) = self.horizon {
            cfg.horizon = Some(h);
        }
        if let Some(t) = self.tolerance {
            cfg.tolerance = Some(t);
        }
        Ok(cfg.resolved())
    }
}

pub fn run(cli: &Cli, w: &mut dyn Write) -> Result<(), CliError> {
    if cli.command == Command::Figures && !cli.dump_config {
        return commands::figures(&cli.out, w);
    }
    let cfg = cli.run_config()?;
    if cli.dump_config {
        write!(w, "{}", cfg.to_toml())?;
        return Ok(());
    }
    match cli.command {
        Command::Simulate => commands::simulate(&cfg, &cli.out, w),
        Command::Compare => commands::compare(&cfg, w),
        Command::Symmetry => commands::symmetry(&cfg, w),
        Command::Stability => commands::stability(&cfg, w),
        Command::Period => commands::period(&cfg, w),
        Command::Figures => unreachable!(),
    }
}
