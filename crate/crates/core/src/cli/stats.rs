use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::cli::{report, EXIT_OK};
use crate::error::{Error, Result};
use crate::metrics::{mann_whitney_with, PValueMethod, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    /// The first column tends to be larger.
    Greater,
    /// The first column tends to be smaller.
    Less,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// CSV file with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// First sample column.
    #[arg(long)]
    pub x: String,
    /// Second sample column.
    #[arg(long)]
    pub y: String,
    #[arg(long, value_enum, default_value = "greater")]
    pub alternative: Alternative,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Number of tests in the family, for the Bonferroni correction.
    #[arg(long, default_value_t = 1)]
    pub comparisons: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct StatsReport<'a> {
    x: &'a str,
    y: &'a str,
    alternative: Alternative,
    n_x: usize,
    n_y: usize,
    u: f64,
    p_value: f64,
    method: PValueMethod,
    alpha: f64,
    comparisons: usize,
    adjusted_alpha: f64,
    reject: bool,
    summary_x: Summary,
    summary_y: Summary,
}

fn columns(a: &StatsArgs) -> Result<(Vec<f64>, Vec<f64>)> {
    let path = &a.input;
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        Error::Parse {
            path: path.clone(),
            line,
            message: e.to_string(),
        }
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
            }
            _ => csv_err(e),
        })?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Parse {
                path: path.clone(),
                line: 1,
                message: format!(
                    "no column {name:?}; columns are {}",
                    headers.iter().collect::<Vec<_>>().join(", ")
                ),
            })
    };
    let (ix, iy) = (find(&a.x)?, find(&a.y)?);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut bad: Vec<u64> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        for (i, dst) in [(ix, &mut xs), (iy, &mut ys)] {
            let cell = rec.get(i).unwrap_or("").trim();
            if cell.is_empty() {
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => dst.push(v),
                _ => {
                    if bad.last() != Some(&line) {
                        bad.push(line);
                    }
                }
            }
        }
    }
    if let Some(&first) = bad.first() {
        let rows: Vec<String> = bad.iter().map(u64::to_string).collect();
        return Err(Error::Parse {
            path: path.clone(),
            line: first as usize,
            message: format!("non-numeric values on rows {}", rows.join(", ")),
        });
    }
    Ok((xs, ys))
}

pub(super) fn run(a: StatsArgs, out: &mut dyn Write) -> Result<i32> {
    let (xs, ys) = columns(&a)?;
    let method = match a.method {
        Method::Auto => PValueMethod::Auto,
        Method::Exact => PValueMethod::Exact,
        Method::Normal => PValueMethod::Normal,
    };
    let test = match a.alternative {
        Alternative::Greater => mann_whitney_with(&xs, &ys, method)?,
        Alternative::Less => mann_whitney_with(&ys, &xs, method)?,
    };
    let decision = test.decide(a.alpha, a.comparisons)?;
    let rep = StatsReport {
        x: &a.x,
        y: &a.y,
        alternative: a.alternative,
        n_x: xs.len(),
        n_y: ys.len(),
        u: test.u,
        p_value: test.p_value,
        method: test.method,
        alpha: a.alpha,
        comparisons: a.comparisons,
        adjusted_alpha: decision.threshold,
        reject: decision.reject,
        summary_x: Summary::of(&xs)?,
        summary_y: Summary::of(&ys)?,
    };
    if a.json {
        let text = serde_json::to_string_pretty(&rep).expect("plain data serializes");
        report(out, format_args!("{text}"))?;
        return Ok(EXIT_OK);
    }
    let sign = match a.alternative {
        Alternative::Greater => ">",
        Alternative::Less => "<",
    };
    for (name, s) in [(rep.x, &rep.summary_x), (rep.y, &rep.summary_y)] {
        report(
            out,
            format_args!("{name}: n = {}, median = {} (IQR {})", s.n, s.median, s.iqr),
        )?;
    }
    report(out, format_args!("alternative: {} {sign} {}", rep.x, rep.y))?;
    report(out, format_args!("U = {}", rep.u))?;
    report(out, format_args!("p = {} ({:?})", rep.p_value, rep.method))?;
    report(
        out,
        format_args!(
            "adjusted alpha = {} / {} = {}",
            rep.alpha, rep.comparisons, rep.adjusted_alpha
        ),
    )?;
    report(out, format_args!("reject = {}", rep.reject))?;
    Ok(EXIT_OK)
}
