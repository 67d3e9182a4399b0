// Signed distance maps and ball-shaped morphology on binary masks.

use cavity_sim::volume::morphology::{closing, dilate, erode};
use cavity_sim::volume::{signed_distance, BinaryMask, Grid, Volume};

pub fn run_example() -> cavity_sim::Result<(usize, usize, f32)> {
    let grid = Grid::new([32, 32, 32], [1.0, 1.0, 2.0], [0.0; 3])?;
    let cube: BinaryMask = Volume::from_fn(grid, |[i, j, k]| {
        (8..24).contains(&i) && (8..24).contains(&j) && (6..14).contains(&k)
    });
    // A one-voxel slit; closing seals it except where it meets the cube's faces.
    let mut slit = cube.clone();
    for j in 8..24 {
        for k in 6..14 {
            slit.set([16, j, k], false);
        }
    }

    let grown = dilate(&cube, 2.0);
    let shrunk = erode(&cube, 2.0);
    let sealed = closing(&slit, 1.0);
    println!(
        "cube {} voxels, dilated {}, eroded {}, slit {} -> closed {}",
        cube.count(),
        grown.count(),
        shrunk.count(),
        slit.count(),
        sealed.count()
    );

    let sd = signed_distance(&cube)?;
    let centre = *sd.get([16, 16, 10]);
    let outside = *sd.get([16, 16, 20]);
    println!("signed distance: centre {centre:.2} mm, above the top face {outside:.2} mm");
    Ok((grown.count(), sealed.count(), centre))
}

fn main() -> cavity_sim::Result<()> {
    run_example()?;
    Ok(())
}
