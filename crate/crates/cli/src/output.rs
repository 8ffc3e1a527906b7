use std::io::Write;

use serde::Serialize;

use crate::commands::{Report, Rows};
use crate::config::RunConfig;
use crate::Format;

#[derive(Serialize)]
struct JsonReport<'a> {
    command: crate::config::Command,
    config: &'a RunConfig,
    results: &'a Rows,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// Floats are written in shortest round-trip form in both formats.
pub fn write_report<W: Write>(out: W, cfg: &RunConfig, report: &Report) -> anyhow::Result<()> {
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    match cfg.format {
        Format::Json => {
            let doc = JsonReport {
                command: cfg.command,
                config: cfg,
                results: &report.rows,
                pass: report.pass,
                error: report.error.as_deref(),
            };
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            match &report.rows {
                Rows::Check(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
                Rows::Approx(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
                Rows::Sweep(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
                Rows::Lemmas(rows) => rows.iter().try_for_each(|r| w.serialize(r))?,
            }
            w.flush()?;
        }
    }
    Ok(())
}
