use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::{BinaryMask, Grid, ScalarVolume, Volume};

/// Normal model of CSF intensities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsfStats {
    pub mean: f64,
    pub std_dev: f64,
}

impl CsfStats {
    pub fn new(mean: f64, std_dev: f64) -> Result<Self> {
        if !mean.is_finite() || !(std_dev >= 0.0 && std_dev.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "CSF statistics ({mean}, {std_dev}) are invalid"
            )));
        }
        Ok(Self { mean, std_dev })
    }
}

/// Mean and population standard deviation of the image under the mask.
pub fn estimate_csf_stats(image: &ScalarVolume, ventricles: &BinaryMask) -> Result<CsfStats> {
    image.ensure_same_grid(ventricles, "image vs ventricle mask")?;
    let values = image
        .data()
        .iter()
        .zip(ventricles.data())
        .filter(|(_, &m)| m)
        .map(|(&v, _)| v as f64);
    let (mut n, mut mean, mut m2) = (0usize, 0.0, 0.0);
    for v in values {
        n += 1;
        let delta = v - mean;
        mean += delta / n as f64;
        m2 += delta * (v - mean);
    }
    if n == 0 {
        return Err(Error::EmptySupport(
            "ventricle mask is empty; cannot estimate CSF intensity".into(),
        ));
    }
    CsfStats::new(mean, (m2 / n as f64).max(0.0).sqrt())
}

/// Independent normal draws per voxel, in memory order.
pub fn synth_csf_texture<R: Rng + ?Sized>(
    grid: &Grid,
    stats: &CsfStats,
    rng: &mut R,
) -> Result<ScalarVolume> {
    let stats = CsfStats::new(stats.mean, stats.std_dev)?;
    let data = if stats.std_dev == 0.0 {
        vec![stats.mean as f32; grid.len()]
    } else {
        let normal = Normal::new(stats.mean, stats.std_dev)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        (0..grid.len()).map(|_| normal.sample(rng) as f32).collect()
    };
    Volume::new(*grid, data)
}

/// `alpha · texture + (1 − alpha) · image`, voxelwise.
pub fn blend(
    image: &ScalarVolume,
    texture: &ScalarVolume,
    alpha: &ScalarVolume,
) -> Result<ScalarVolume> {
    image.ensure_same_grid(texture, "image vs texture")?;
    image.ensure_same_grid(alpha, "image vs alpha")?;
    if let Some((index, &value)) = alpha
        .data()
        .iter()
        .enumerate()
        .find(|(_, a)| !(0.0..=1.0).contains(*a))
    {
        return Err(Error::InvalidAlpha { index, value });
    }
    let data = image
        .data()
        .iter()
        .zip(texture.data())
        .zip(alpha.data())
        .map(|((&x, &t), &a)| a * t + (1.0 - a) * x)
        .collect();
    Volume::new(*image.grid(), data)
}
