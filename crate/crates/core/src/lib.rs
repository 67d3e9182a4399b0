//! Synthesis of surgical resection cavities in 3D brain volumes.
//!
//! A noisy geodesic sphere is stretched into an ellipsoid, dropped onto a
//! random cortical gray-matter voxel, rasterized and clipped to the
//! resectable part of one hemisphere. The resulting label drives a smoothed
//! alpha blend between the original image and a CSF-like texture. The
//! [`metrics`] module carries the agreement statistics used to judge such
//! labels: Dice, shape-based averaging and one-tailed rank tests.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod volume;

pub use error::{Error, Result};
pub mod phantom;
pub mod simulation;
