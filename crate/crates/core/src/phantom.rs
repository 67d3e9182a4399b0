//! Synthetic two-hemisphere head phantom with a matching parcellation.
//!
//! Useful for demos and tests when no co-registered scan is at hand. The
//! layout follows RAS voxel axes: `x` grows to the right, `y` anteriorly and
//! `z` superiorly.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::Result;
use crate::io::{self, Datatype};
use crate::volume::{Category, Grid, LabelCategoryMap, LabelVolume, ScalarVolume, Volume};

pub const BACKGROUND: i32 = 0;
pub const WHITE_MATTER_LEFT: i32 = 1;
pub const WHITE_MATTER_RIGHT: i32 = 2;
pub const GRAY_MATTER_LEFT: i32 = 3;
pub const GRAY_MATTER_RIGHT: i32 = 4;
pub const VENTRICLE_LEFT: i32 = 5;
pub const VENTRICLE_RIGHT: i32 = 6;
pub const BRAINSTEM: i32 = 7;
pub const CEREBELLUM: i32 = 8;
pub const SCALP: i32 = 9;

/// Mean intensities per label, roughly T1-weighted contrast.
fn intensity(label: i32) -> f64 {
    match label {
        WHITE_MATTER_LEFT | WHITE_MATTER_RIGHT => 110.0,
        GRAY_MATTER_LEFT | GRAY_MATTER_RIGHT => 70.0,
        VENTRICLE_LEFT | VENTRICLE_RIGHT => 30.0,
        BRAINSTEM => 100.0,
        CEREBELLUM => 80.0,
        SCALP => 140.0,
        _ => 5.0,
    }
}

/// Paths written by [`Phantom::write_to`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhantomFiles {
    pub image: PathBuf,
    pub parcellation: PathBuf,
    pub labelmap: PathBuf,
}

#[derive(Debug, Clone)]
pub struct Phantom {
    pub image: ScalarVolume,
    pub parcellation: LabelVolume,
    pub map: LabelCategoryMap,
}

impl Phantom {
    /// Builds a phantom on a cubic grid of `n³` voxels with isotropic
    /// `spacing` (mm), centred on the world origin. `seed` drives the
    /// intensity noise.
    pub fn new(n: usize, spacing: f64, seed: u64) -> Result<Self> {
        let half = (n as f64 - 1.0) / 2.0 * spacing;
        let grid = Grid::new([n; 3], [spacing; 3], [-half; 3])?;
        let extent = n as f64 * spacing;
        // Brain semi-axes relative to the field of view.
        let brain = [0.36 * extent, 0.42 * extent, 0.34 * extent];
        let cortex = 0.12 * brain[0].min(brain[2]);
        let skull = 0.06 * extent;

        let parcellation = Volume::from_fn(grid, |ijk| {
            let p = grid.voxel_to_world(ijk);
            let r = ellipsoid_radius(p, [0.0; 3], brain);
            if r > 1.0 {
                let outer = [brain[0] + skull, brain[1] + skull, brain[2] + skull];
                return if ellipsoid_radius(p, [0.0; 3], outer) <= 1.0 {
                    SCALP
                } else {
                    BACKGROUND
                };
            }
            let cerebellum = ellipsoid_radius(
                p,
                [0.0, -0.55 * brain[1], -0.55 * brain[2]],
                [0.5 * brain[0], 0.3 * brain[1], 0.3 * brain[2]],
            );
            if cerebellum <= 1.0 {
                return CEREBELLUM;
            }
            let stem = (p[0] / (0.12 * brain[0])).powi(2)
                + ((p[1] + 0.15 * brain[1]) / (0.12 * brain[1])).powi(2);
            if stem <= 1.0 && p[2] < -0.1 * brain[2] {
                return BRAINSTEM;
            }
            if p[0].abs() < spacing {
                return BACKGROUND;
            }
            let left = p[0] < 0.0;
            let ventricle = ellipsoid_radius(
                [p[0].abs(), p[1], p[2]],
                [0.12 * brain[0], 0.0, 0.1 * brain[2]],
                [0.07 * brain[0], 0.3 * brain[1], 0.1 * brain[2]],
            );
            // Depth below the outer brain surface, approximated radially.
            let depth = (1.0 - r) * brain[0].min(brain[2]);
            match (ventricle <= 1.0, depth < cortex, left) {
                (true, _, true) => VENTRICLE_LEFT,
                (true, _, false) => VENTRICLE_RIGHT,
                (false, true, true) => GRAY_MATTER_LEFT,
                (false, true, false) => GRAY_MATTER_RIGHT,
                (false, false, true) => WHITE_MATTER_LEFT,
                (false, false, false) => WHITE_MATTER_RIGHT,
            }
        });

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, 3.0).expect("valid normal");
        let image = parcellation.map(|&l| (intensity(l) + noise.sample(&mut rng)) as f32);

        Ok(Self {
            image,
            parcellation,
            map: Self::label_map(),
        })
    }

    /// Writes `{stem}.nii.gz`, `{stem}_parcellation.nii.gz` and
    /// `labelmap.json` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>, stem: &str) -> Result<PhantomFiles> {
        let dir = dir.as_ref();
        let files = PhantomFiles {
            image: dir.join(format!("{stem}.nii.gz")),
            parcellation: dir.join(format!("{stem}_parcellation.nii.gz")),
            labelmap: dir.join("labelmap.json"),
        };
        io::write_scalar(&files.image, &self.image, None)?;
        io::write_labels(&files.parcellation, &self.parcellation, Datatype::U8, None)?;
        io::write_labelmap(&files.labelmap, &self.map)?;
        Ok(files)
    }

    /// Category map for the phantom's labels.
    pub fn label_map() -> LabelCategoryMap {
        LabelCategoryMap::builder()
            .set(Category::Background, [BACKGROUND, SCALP])
            .set(Category::Brainstem, [BRAINSTEM])
            .set(Category::Cerebellum, [CEREBELLUM])
            .set(Category::GrayMatterLeft, [GRAY_MATTER_LEFT])
            .set(Category::GrayMatterRight, [GRAY_MATTER_RIGHT])
            .set(
                Category::HemisphereLeft,
                [WHITE_MATTER_LEFT, GRAY_MATTER_LEFT, VENTRICLE_LEFT],
            )
            .set(
                Category::HemisphereRight,
                [WHITE_MATTER_RIGHT, GRAY_MATTER_RIGHT, VENTRICLE_RIGHT],
            )
            .set(Category::Ventricles, [VENTRICLE_LEFT, VENTRICLE_RIGHT])
            .build()
            .expect("phantom label map is consistent")
    }
}

fn ellipsoid_radius(p: [f64; 3], centre: [f64; 3], axes: [f64; 3]) -> f64 {
    (0..3)
        .map(|a| ((p[a] - centre[a]) / axes[a]).powi(2))
        .sum::<f64>()
        .sqrt()
}
