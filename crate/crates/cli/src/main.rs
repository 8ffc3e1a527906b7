//! `revhilbert`: checks of the reverse Hilbert-type inequality on user
//! data, exponential-sum kernel tables, optimality sweeps and the lemma
//! verification bundle.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod input;
mod output;

use config::{Command, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate T, S1..S3 and the reverse inequality on pairs read from CSV
    Check {
        /// CSV with header `a,b`; blank lines separate pairs
        #[arg(long)]
        input: PathBuf,
        /// Constant in T² ≤ 2·S2 + λ·√(S1·S3)
        #[arg(long, default_value_t = revhilbert::TWO_SQRT_2)]
        lambda: f64,
    },
    /// Exponential-sum approximation tables and error scans
    Approx {
        /// Comma-separated grid steps
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 400)]
        grid: usize,
    },
    /// Optimality certificates along a decreasing sequence of steps
    Sweep {
        #[arg(long = "h", value_delimiter = ',', default_values_t = [1.0, 0.75, 0.5])]
        h: Vec<f64>,
    },
    /// Majorant constants, Fourier oracle grid and envelope checks
    Lemmas {
        /// Run the majorant check at this multiple of λ₀
        #[arg(long, default_value_t = 1.0)]
        lambda_scale: f64,
    },
}

impl Cli {
    fn into_config(self) -> RunConfig {
        let mut cfg = RunConfig::new(Command::Check, self.format);
        cfg.output_path = self.output;
        match self.command {
            Cmd::Check { input, lambda } => {
                cfg.command = Command::Check;
                cfg.input_path = Some(input);
                cfg.lambda = lambda;
            }
            Cmd::Approx { h, t_max, grid } => {
                cfg.command = Command::Approx;
                cfg.h_list = h;
                cfg.t_max = t_max;
                cfg.grid_points = grid;
            }
            Cmd::Sweep { h } => {
                cfg.command = Command::Sweep;
                cfg.h_list = h;
            }
            Cmd::Lemmas { lambda_scale } => {
                cfg.command = Command::Lemmas;
                cfg.lambda_scale = lambda_scale;
            }
        }
        cfg
    }
}

fn run(cfg: &RunConfig) -> anyhow::Result<bool> {
    cfg.validate()?;
    let report = commands::execute(cfg)?;
    let mut buf = Vec::new();
    output::write_report(&mut buf, cfg, &report)?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, &buf)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cfg = Cli::parse().into_config();
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
