// Reading and writing NIfTI-1 volumes in a non-RAS orientation.

use std::path::{Path, PathBuf};

use cavity_sim::io::{read_labels, write_labels, Datatype, VolumeHeader};
use cavity_sim::volume::{Grid, Volume};

pub fn run_example(out: &Path) -> cavity_sim::Result<String> {
    std::fs::create_dir_all(out).map_err(|e| cavity_sim::Error::Io {
        path: out.into(),
        source: e,
    })?;

    // A left-posterior-superior file, as written by many DICOM converters.
    let mut header = VolumeHeader::for_grid(&Grid::with_dims([6, 5, 4])?, Datatype::I16);
    header.srow = [
        [-1.0, 0.0, 0.0, 30.0],
        [0.0, -1.0, 0.0, 40.0],
        [0.0, 0.0, 2.5, -10.0],
    ];
    header.pixdim = [1.0, 1.0, 1.0, 2.5];
    let grid = header.ras_grid()?;
    println!(
        "RAS grid: dims {:?}, spacing {:?}, origin {:?}",
        grid.dims(),
        grid.spacing(),
        grid.origin()
    );

    let labels = Volume::from_fn(grid, |[i, j, k]| (i * 100 + j * 10 + k) as i32 - 200);
    let path = out.join("lps_labels.nii.gz");
    write_labels(&path, &labels, Datatype::I16, Some(&header))?;

    let (back, back_header) = read_labels(&path)?;
    println!(
        "read back {} voxels, orientation {}, identical: {}",
        back.data().len(),
        back_header.orientation,
        back == labels
    );
    Ok(back_header.orientation)
}

fn main() -> cavity_sim::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/example-output/nifti"));
    run_example(&out)?;
    Ok(())
}
