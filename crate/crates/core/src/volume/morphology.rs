//! Binary morphology with Euclidean ball structuring elements.
//!
//! A voxel belongs to the dilation by a ball of radius `r` (voxel units) iff
//! its squared distance to the nearest foreground voxel is at most `r²`, so
//! both operators reduce to one exact distance transform each. Voxels beyond
//! the grid are ignored rather than treated as background.

use crate::volume::distance::squared_distance_to;
use crate::volume::BinaryMask;

const UNIT: [f64; 3] = [1.0, 1.0, 1.0];

pub fn dilate(mask: &BinaryMask, radius: f64) -> BinaryMask {
    let d2 = squared_distance_to(mask.grid().dims(), mask.data(), UNIT);
    let r2 = radius * radius;
    let mut out = mask.clone();
    for (o, d) in out.data_mut().iter_mut().zip(d2) {
        *o = d <= r2;
    }
    out
}

pub fn erode(mask: &BinaryMask, radius: f64) -> BinaryMask {
    let background: Vec<bool> = mask.data().iter().map(|&b| !b).collect();
    let d2 = squared_distance_to(mask.grid().dims(), &background, UNIT);
    let r2 = radius * radius;
    let mut out = mask.clone();
    for (o, d) in out.data_mut().iter_mut().zip(d2) {
        *o = d > r2;
    }
    out
}

pub fn closing(mask: &BinaryMask, radius: f64) -> BinaryMask {
    erode(&dilate(mask, radius), radius)
}

pub fn opening(mask: &BinaryMask, radius: f64) -> BinaryMask {
    dilate(&erode(mask, radius), radius)
}
