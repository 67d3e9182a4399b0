use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use crate::cli::{ensure_dir, is_volume_file, report, EXIT_OK};
use crate::error::{Error, Result};
use crate::io;
use crate::metrics::{dice, Summary};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Directory of reference label files.
    #[arg(long)]
    pub reference: PathBuf,
    /// Directory of predicted label files, matched to the references by file name.
    #[arg(long)]
    pub prediction: PathBuf,
    /// Receives `dice.csv` and `dice_summary.json`.
    #[arg(long)]
    pub output_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct Row<'a> {
    name: &'a str,
    dice: f64,
    reference_voxels: usize,
    prediction_voxels: usize,
}

#[derive(Debug, Serialize)]
struct SummaryFile {
    pairs: usize,
    dice: Summary,
}

fn list(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = BTreeMap::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if is_volume_file(&path) {
            out.insert(
                path.file_name().unwrap().to_string_lossy().into_owned(),
                path,
            );
        }
    }
    Ok(out)
}

pub(super) fn run(a: EvaluateArgs, out: &mut dyn Write) -> Result<i32> {
    let refs = list(&a.reference)?;
    let preds = list(&a.prediction)?;
    let orphans: Vec<String> = refs
        .keys()
        .filter(|k| !preds.contains_key(*k))
        .map(|k| a.reference.join(k).display().to_string())
        .chain(
            preds
                .keys()
                .filter(|k| !refs.contains_key(*k))
                .map(|k| a.prediction.join(k).display().to_string()),
        )
        .collect();
    if refs.is_empty() && preds.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no pairs found in {} and {}",
            a.reference.display(),
            a.prediction.display()
        )));
    }
    if !orphans.is_empty() {
        return Err(Error::InvalidInput(format!(
            "unpaired files: {}",
            orphans.join(", ")
        )));
    }

    ensure_dir(&a.output_dir)?;
    let csv_path = a.output_dir.join("dice.csv");
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut scores = Vec::with_capacity(refs.len());
    for (name, ref_path) in &refs {
        let (r, _) = io::read_mask(ref_path)?;
        let (p, _) = io::read_mask(&preds[name])?;
        let d = dice(&r, &p).map_err(|e| match e {
            Error::GridMismatch(m) => Error::GridMismatch(format!("{name}: {m}")),
            other => other,
        })?;
        scores.push(d);
        writer
            .serialize(Row {
                name,
                dice: d,
                reference_voxels: r.count(),
                prediction_voxels: p.count(),
            })
            .map_err(|e| Error::InvalidInput(format!("cannot format CSV: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidInput(format!("cannot format CSV: {e}")))?;
    io::write_atomically(&csv_path, &bytes)?;

    let summary = Summary::of(&scores)?;
    io::write_json(
        a.output_dir.join("dice_summary.json"),
        &SummaryFile {
            pairs: scores.len(),
            dice: summary,
        },
    )?;
    report(
        out,
        format_args!(
            "{} pairs: median Dice {:.4} (IQR {:.4})",
            scores.len(),
            summary.median,
            summary.iqr
        ),
    )?;
    Ok(EXIT_OK)
}
