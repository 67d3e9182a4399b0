use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use crate::cli::{ensure_dir, report, require_file, volume_stem, EXIT_OK};
use crate::error::{Error, Result};
use crate::io;
use crate::metrics::{leave_one_out_consensus, sba_consensus, RaterSet};

#[derive(Debug, Args)]
pub struct ConsensusArgs {
    /// Binary label files, one per rater.
    #[arg(required = true, num_args = 2..)]
    pub masks: Vec<PathBuf>,
    /// Output file; with `--leave-one-out`, an output directory.
    #[arg(long)]
    pub output: PathBuf,
    /// Write one consensus per rater, built from all the other raters.
    #[arg(long)]
    pub leave_one_out: bool,
}

pub(super) fn run(a: ConsensusArgs, out: &mut dyn Write) -> Result<i32> {
    for m in &a.masks {
        require_file(m, "mask")?;
    }
    let mut raters = RaterSet::new();
    let mut template = None;
    for path in &a.masks {
        let (mask, header) = io::read_mask(path)?;
        raters
            .push(path.display().to_string(), mask)
            .map_err(|e| match e {
                Error::GridMismatch(_) => Error::GridMismatch(format!(
                    "{} is not on the grid of {}",
                    path.display(),
                    a.masks[0].display()
                )),
                other => other,
            })?;
        template.get_or_insert(header);
    }

    if a.leave_one_out {
        ensure_dir(&a.output)?;
        let masks = leave_one_out_consensus(&raters)?;
        for (path, mask) in a.masks.iter().zip(&masks) {
            let name = format!("consensus_without_{}.nii.gz", volume_stem(path));
            io::write_mask(a.output.join(&name), mask, template.as_ref())?;
        }
        report(
            out,
            format_args!(
                "{} leave-one-out consensus masks written to {}",
                masks.len(),
                a.output.display()
            ),
        )?;
    } else {
        let mask = sba_consensus(&raters)?;
        io::write_mask(&a.output, &mask, template.as_ref())?;
        report(
            out,
            format_args!(
                "consensus of {} raters: {} voxels",
                raters.len(),
                mask.count()
            ),
        )?;
    }
    Ok(EXIT_OK)
}
