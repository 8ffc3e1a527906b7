use anyhow::Context;
use revhilbert::kernel::lemma::{lm0_gap_function, linear_grid};
use revhilbert::kernel::{
    approx_error_scan, choose_grid_truncation, envelope, ft_density, ft_hat_by_quadrature,
    ft_hat_magnitude, generate_terms, lambda0, lm0_coefficient, lm0_majorant_check, log_grid,
};
use revhilbert::optimality::LambdaCertificate;
use revhilbert::{check_reverse_hilbert, Error, HilbertQuantities};
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::input::read_pairs;

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub pair: usize,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "S3")]
    pub s3: f64,
    pub lambda_emp: f64,
    pub lambda: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
}

/// One row per term; the per-step summary is repeated on every row so the
/// table stays flat.
#[derive(Debug, Serialize)]
pub struct ApproxRow {
    pub h: f64,
    pub nu: usize,
    pub delta: f64,
    pub tail_tol: f64,
    pub mass: f64,
    pub max_relative_error: f64,
    pub argmax_t: f64,
    pub bound: f64,
    pub within_bound: bool,
    pub n: i64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Serialize)]
pub struct LemmaRow {
    pub quantity: &'static str,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub value: f64,
    pub reference: Option<f64>,
    pub pass: bool,
}

impl LemmaRow {
    fn new(quantity: &'static str, value: f64, pass: bool) -> Self {
        Self {
            quantity,
            x: None,
            y: None,
            value,
            reference: None,
            pass,
        }
    }

    fn at(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    fn at2(mut self, x: f64, y: f64) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self
    }

    fn reference(mut self, r: f64) -> Self {
        self.reference = Some(r);
        self
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Rows {
    Check(Vec<CheckRow>),
    Approx(Vec<ApproxRow>),
    Sweep(Vec<LambdaCertificate>),
    Lemmas(Vec<LemmaRow>),
}

#[derive(Debug)]
pub struct Report {
    pub rows: Rows,
    pub pass: bool,
    /// Set when a sweep stopped early; `rows` then holds the partial results.
    pub error: Option<String>,
}

impl Report {
    fn complete(rows: Rows, pass: bool) -> Self {
        Self {
            rows,
            pass,
            error: None,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> anyhow::Result<Report> {
    match cfg.command {
        Command::Check => cmd_check(cfg),
        Command::Approx => cmd_approx(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Lemmas => cmd_lemmas(cfg),
    }
}

fn cmd_check(cfg: &RunConfig) -> anyhow::Result<Report> {
    let path = cfg.input_path.as_deref().context("check needs --input")?;
    let pairs = read_pairs(path)?;
    let mut rows = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        let q = HilbertQuantities::compute(pair).with_context(|| format!("pair {}", i + 1))?;
        let r = check_reverse_hilbert(pair, cfg.lambda)?;
        rows.push(CheckRow {
            pair: i + 1,
            n: pair.len(),
            t: q.t,
            s1: q.s1,
            s2: q.s2,
            s3: q.s3,
            lambda_emp: q.lambda_emp,
            lambda: cfg.lambda,
            lhs: r.lhs,
            rhs: r.rhs,
            holds: r.holds,
            margin: r.margin,
        });
    }
    let pass = rows.iter().all(|r| r.holds);
    Ok(Report::complete(Rows::Check(rows), pass))
}

fn cmd_approx(cfg: &RunConfig) -> anyhow::Result<Report> {
    let grid = log_grid(cfg.t_max, cfg.grid_points)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for &h in &cfg.h_list {
        let nu = choose_grid_truncation(h)?;
        let approx = generate_terms(h, nu)?;
        let scan = approx_error_scan(&approx, &grid)?;
        pass &= scan.within_bound;
        rows.extend(approx.terms.iter().map(|term| ApproxRow {
            h,
            nu,
            delta: approx.delta,
            tail_tol: approx.tail_tol,
            mass: approx.mass,
            max_relative_error: scan.max_relative_error,
            argmax_t: scan.argmax_t,
            bound: scan.bound,
            within_bound: scan.within_bound,
            n: term.index,
            a: term.weight,
            b: term.rate,
        }));
    }
    Ok(Report::complete(Rows::Approx(rows), pass))
}

fn cmd_sweep(cfg: &RunConfig) -> anyhow::Result<Report> {
    match revhilbert::sweep(&cfg.h_list) {
        Ok(report) => Ok(Report::complete(Rows::Sweep(report.certificates), report.pass)),
        Err(Error::SweepAborted {
            h,
            completed,
            source,
        }) => Ok(Report {
            rows: Rows::Sweep(completed),
            pass: false,
            error: Some(format!("sweep aborted at h = {h}: {source}")),
        }),
        Err(e) => Err(e.into()),
    }
}

const A2_REFERENCE: f64 = 0.96531;
const A3_OVER_A2_REFERENCE: f64 = 0.8177;
const FOURIER_TOL: f64 = 1e-8;

fn cmd_lemmas(cfg: &RunConfig) -> anyhow::Result<Report> {
    let mut rows = Vec::new();

    let coeffs: Vec<f64> = (2..=200)
        .map(|n| lm0_coefficient(n).map(|c| c.value))
        .collect::<Result<_, _>>()?;
    for (n, &a) in (2..).zip(&coeffs) {
        rows.push(LemmaRow::new("a_n", a, a < 1.0).at(f64::from(n)));
    }
    let mut prev = f64::INFINITY;
    for (n, w) in (2..).zip(coeffs.windows(2)) {
        let ratio = w[1] / w[0];
        rows.push(LemmaRow::new("a_n_ratio", ratio, ratio < prev).at(f64::from(n)));
        prev = ratio;
    }
    let a2 = coeffs[0];
    let ratio = coeffs[1] / coeffs[0];
    rows.push(LemmaRow::new("a2", a2, (a2 - A2_REFERENCE).abs() <= 1e-5).reference(A2_REFERENCE));
    rows.push(
        LemmaRow::new("a3/a2", ratio, (ratio - A3_OVER_A2_REFERENCE).abs() <= 1e-4)
            .reference(A3_OVER_A2_REFERENCE),
    );

    let lambda = cfg.lambda_scale * lambda0();
    let mut grid = linear_grid(-20.0, 20.0, 1000);
    grid.extend(linear_grid(-2.0, 2.0, 2001));
    let majorant = lm0_majorant_check(&grid, lambda)?;
    rows.push(
        LemmaRow::new("majorant_violation", majorant.max_violation, majorant.holds)
            .at2(lambda, majorant.argmax_x),
    );

    for t in [0.0, 1.0, 10.0] {
        for w in [0.0, 0.5, 1.0, 3.0] {
            let closed = ft_hat_magnitude(w, t);
            let oracle = ft_hat_by_quadrature(w, t, 1e-12)?.value;
            let cosh_bound = 1.0 / ((1.0 + t).powi(2) * (lambda0() * w).cosh());
            let pass = (closed - oracle).abs() <= FOURIER_TOL && closed <= cosh_bound * (1.0 + 1e-12);
            rows.push(LemmaRow::new("ft_hat", closed, pass).at2(t, w).reference(oracle));
        }
    }

    let mut envelope_excess = f64::NEG_INFINITY;
    for x in linear_grid(-50.0, 50.0, 2001) {
        for t in [0.0, 1.0, 10.0, 100.0] {
            let env = envelope(x);
            envelope_excess = envelope_excess.max((ft_density(x, t) - env) / env);
        }
    }
    // tight at x = 1, t = 0
    rows.push(LemmaRow::new(
        "envelope_relative_excess",
        envelope_excess,
        envelope_excess <= 4.0 * f64::EPSILON,
    ));

    let gap_min = linear_grid(-10.0, 10.0, 2001)
        .into_iter()
        .map(lm0_gap_function)
        .fold(f64::INFINITY, f64::min);
    rows.push(LemmaRow::new("gap_function_min", gap_min, gap_min >= -1e-12));

    let pass = rows.iter().all(|r| r.pass);
    Ok(Report::complete(Rows::Lemmas(rows), pass))
}
