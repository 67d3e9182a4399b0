//! Voxel grids and the raster operations used to build cavity labels.

mod distance;
mod grid;
mod labels;
pub mod morphology;
mod sample;
mod smooth;
mod voxelize;

pub use distance::signed_distance;
pub(crate) use distance::signed_distance_f64;
pub use grid::{BinaryMask, Grid, LabelVolume, ScalarVolume, Volume};
pub use labels::{
    category_mask, resectable_mask, Category, Hemisphere, LabelCategoryMap,
    LabelCategoryMapBuilder, ResectableOptions,
};
pub use sample::sample_random_voxel;
pub use smooth::gaussian_smooth;
pub use voxelize::voxelize;
