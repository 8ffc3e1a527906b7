//! Reader for the pair CSV: header `a,b`, one `(weight, node)` row per
//! line, blank lines between pairs. Only `.` is accepted as the decimal
//! separator.

use std::path::Path;

use anyhow::{bail, Context};
use revhilbert::WeightVectorPair;

pub fn read_pairs(path: &Path) -> anyhow::Result<Vec<WeightVectorPair>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pairs(&text)
}

pub fn parse_pairs(text: &str) -> anyhow::Result<Vec<WeightVectorPair>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if normalize(header) == "a,b" => {}
        Some((_, header)) => bail!("line 1: expected header `a,b`, found `{}`", header.trim()),
        None => bail!("empty input"),
    }

    let mut pairs = Vec::new();
    let mut block: (Vec<f64>, Vec<f64>, usize) = (Vec::new(), Vec::new(), 0);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            flush(&mut block, &mut pairs)?;
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            bail!("line {lineno}: expected 2 fields, found {}", fields.len());
        }
        let parse = |s: &str| -> anyhow::Result<f64> {
            let v: f64 = s
                .parse()
                .with_context(|| format!("line {lineno}: `{s}` is not a decimal number"))?;
            if !(v > 0.0 && v.is_finite()) {
                bail!("line {lineno}: entries must be positive, found {v}");
            }
            Ok(v)
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        if block.0.is_empty() {
            block.2 = lineno;
        }
        block.0.push(a);
        block.1.push(b);
    }
    flush(&mut block, &mut pairs)?;
    if pairs.is_empty() {
        bail!("input contains no pairs");
    }
    Ok(pairs)
}

fn normalize(header: &str) -> String {
    header.trim().trim_start_matches('\u{feff}').replace(' ', "")
}

fn flush(
    block: &mut (Vec<f64>, Vec<f64>, usize),
    pairs: &mut Vec<WeightVectorPair>,
) -> anyhow::Result<()> {
    if block.0.is_empty() {
        return Ok(());
    }
    let a = std::mem::take(&mut block.0);
    let b = std::mem::take(&mut block.1);
    let pair = WeightVectorPair::new(a, b)
        .with_context(|| format!("pair starting at line {}", block.2))?;
    pairs.push(pair);
    Ok(())
}
