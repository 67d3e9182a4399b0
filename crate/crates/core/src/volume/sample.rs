use rand::Rng;

use crate::error::{Error, Result};
use crate::volume::BinaryMask;

/// Draws a foreground voxel uniformly at random.
pub fn sample_random_voxel<R: Rng + ?Sized>(mask: &BinaryMask, rng: &mut R) -> Result<[usize; 3]> {
    let n = mask.count();
    if n == 0 {
        return Err(Error::EmptySupport(
            "cannot sample from an empty mask".into(),
        ));
    }
    let target = rng.random_range(0..n);
    let idx = mask
        .data()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .nth(target)
        .map(|(i, _)| i)
        .expect("target below foreground count");
    Ok(mask.grid().voxel_index(idx))
}
