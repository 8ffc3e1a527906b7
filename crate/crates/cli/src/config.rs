use std::path::PathBuf;

use anyhow::{bail, ensure};
use revhilbert::optimality::{H_MAX, H_MIN};
use serde::Serialize;

use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Check,
    Approx,
    Sweep,
    Lemmas,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub h_list: Vec<f64>,
    pub lambda: f64,
    pub lambda_scale: f64,
    pub t_max: f64,
    pub grid_points: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, format: Format) -> Self {
        Self {
            command,
            input_path: None,
            output_path: None,
            h_list: Vec::new(),
            lambda: revhilbert::TWO_SQRT_2,
            lambda_scale: 1.0,
            t_max: 100.0,
            grid_points: 400,
            format,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        for &h in &self.h_list {
            ensure!(
                (H_MIN..=H_MAX).contains(&h),
                "h = {h} is outside [{H_MIN}, {H_MAX}]"
            );
        }
        ensure!(self.grid_points >= 2, "grid needs at least 2 points");
        ensure!(
            self.t_max > 0.0 && self.t_max.is_finite(),
            "t-max must be positive"
        );
        ensure!(
            self.lambda >= 0.0 && self.lambda.is_finite(),
            "lambda must be non-negative"
        );
        ensure!(
            self.lambda_scale > 0.0 && self.lambda_scale.is_finite(),
            "lambda-scale must be positive"
        );
        match self.command {
            Command::Check if self.input_path.is_none() => bail!("check needs --input"),
            Command::Approx | Command::Sweep if self.h_list.is_empty() => {
                bail!("at least one h is required")
            }
            _ => Ok(()),
        }
    }
}
