use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    apply_transform, ellipsoid_semiaxes, icosphere, make_transform_chain, perturb_radially,
    Displacement, EllipsoidAxes, Point3, SimplexNoise, TriangleMesh,
};
use crate::simulation::csf::{blend, estimate_csf_stats, synth_csf_texture, CsfStats};
use crate::simulation::params::ResectionParams;
use crate::volume::{
    category_mask, gaussian_smooth, resectable_mask, sample_random_voxel, voxelize, BinaryMask,
    Category, Hemisphere, LabelCategoryMap, LabelVolume, ResectableOptions, ScalarVolume,
};

/// What was realized during one draw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResectionMetadata {
    pub params: ResectionParams,
    pub semiaxes: EllipsoidAxes,
    /// Voxel index of the gray-matter seed the cavity is centred on.
    pub seed_voxel: [usize; 3],
    /// Seed voxel centre in mm.
    pub seed_point: Point3,
    /// Centroid of the perturbed unit surface before recentring.
    pub surface_centroid: Point3,
    /// Ellipsoid mask volume before clipping to the resectable mask, mm³.
    pub ellipsoid_volume: f64,
    /// Final label volume, mm³.
    pub cavity_volume: f64,
    pub cavity_voxels: usize,
    pub csf: CsfStats,
    /// Seed voxels tried, including the successful one.
    pub attempts: usize,
}

#[derive(Debug, Clone)]
pub struct SimulationResult {
    /// Image with the cavity blended in.
    pub image: ScalarVolume,
    /// Cavity label.
    pub label: BinaryMask,
    /// Placed cavity surface, in mm.
    pub surface: TriangleMesh,
    pub metadata: ResectionMetadata,
}

/// Builds the placed cavity surface: geodesic sphere, radial perturbation,
/// recentring, rotation, ellipsoid scaling and translation to `target`.
/// Also returns the semi-axes and the centroid of the perturbed sphere.
pub fn cavity_surface(
    params: &ResectionParams,
    field: &dyn Displacement,
    target: Point3,
) -> Result<(TriangleMesh, EllipsoidAxes, Point3)> {
    let (perturbed, centroid, axes) = unit_surface(params, field)?;
    let chain = make_transform_chain(centroid, params.angles, &axes, target);
    Ok((apply_transform(&perturbed, &chain)?, axes, centroid))
}

fn unit_surface(
    params: &ResectionParams,
    field: &dyn Displacement,
) -> Result<(TriangleMesh, Point3, EllipsoidAxes)> {
    let sphere = icosphere(params.frequency)?;
    let perturbed = perturb_radially(&sphere, field)?;
    let centroid = perturbed.centroid();
    let axes = ellipsoid_semiaxes(params.volume, params.lambda, params.volume_mode)?;
    Ok((perturbed, centroid, axes))
}

/// Inputs of a batch of draws on one subject, with the draw-independent
/// masks and CSF statistics computed lazily and cached.
pub struct ResectionContext<'a> {
    image: &'a ScalarVolume,
    parcellation: &'a LabelVolume,
    map: &'a LabelCategoryMap,
    options: ResectableOptions,
    resectable: [OnceLock<BinaryMask>; 2],
    gray_matter: [OnceLock<BinaryMask>; 2],
    csf: OnceLock<CsfStats>,
}

fn slot(h: Hemisphere) -> usize {
    match h {
        Hemisphere::Left => 0,
        Hemisphere::Right => 1,
    }
}

fn cached<T>(cell: &OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let value = init()?;
    Ok(cell.get_or_init(|| value))
}

impl<'a> ResectionContext<'a> {
    pub fn new(
        image: &'a ScalarVolume,
        parcellation: &'a LabelVolume,
        map: &'a LabelCategoryMap,
        options: ResectableOptions,
    ) -> Result<Self> {
        image.ensure_same_grid(parcellation, "image vs parcellation")?;
        Ok(Self {
            image,
            parcellation,
            map,
            options,
            resectable: Default::default(),
            gray_matter: Default::default(),
            csf: OnceLock::new(),
        })
    }

    pub fn image(&self) -> &ScalarVolume {
        self.image
    }

    pub fn resectable(&self, h: Hemisphere) -> Result<&BinaryMask> {
        cached(&self.resectable[slot(h)], || {
            resectable_mask(self.parcellation, self.map, h, &self.options)
        })
    }

    pub fn gray_matter(&self, h: Hemisphere) -> Result<&BinaryMask> {
        cached(&self.gray_matter[slot(h)], || {
            category_mask(self.parcellation, self.map, &[h.gray_matter()])
        })
    }

    pub fn csf_stats(&self) -> Result<CsfStats> {
        cached(&self.csf, || {
            let ventricles = category_mask(self.parcellation, self.map, &[Category::Ventricles])?;
            estimate_csf_stats(self.image, &ventricles)
        })
        .copied()
    }

    /// One draw with simplex-noise displacement.
    pub fn simulate<R: Rng + ?Sized>(
        &self,
        params: &ResectionParams,
        rng: &mut R,
    ) -> Result<SimulationResult> {
        params.validate()?;
        let noise = SimplexNoise::new(params.noise)?;
        self.simulate_with(params, &noise, rng)
    }

    /// One draw with a caller-supplied displacement field.
    pub fn simulate_with<R: Rng + ?Sized>(
        &self,
        params: &ResectionParams,
        field: &dyn Displacement,
        rng: &mut R,
    ) -> Result<SimulationResult> {
        params.validate()?;
        let csf = self.csf_stats()?;
        let gm = self.gray_matter(params.hemisphere)?;
        if gm.is_empty_mask() {
            return Err(Error::EmptySupport(format!(
                "no {} gray matter voxels in the parcellation",
                params.hemisphere
            )));
        }
        let resectable = self.resectable(params.hemisphere)?;
        let grid = self.image.grid();

        // The unit surface does not depend on the seed, only its placement does.
        let (perturbed, centroid, axes) = unit_surface(params, field)?;

        for attempt in 1..=params.max_attempts {
            let seed_voxel = sample_random_voxel(gm, rng)?;
            let seed_point = grid.voxel_to_world(seed_voxel);
            let chain = make_transform_chain(centroid, params.angles, &axes, seed_point);
            let surface = apply_transform(&perturbed, &chain)?;
            let ellipsoid = voxelize(&surface, grid)?;
            let label = ellipsoid.and(resectable)?;
            if label.is_empty_mask() {
                log::debug!(
                    "attempt {attempt}: cavity at {seed_voxel:?} misses the resectable mask"
                );
                continue;
            }
            let alpha = gaussian_smooth(&label.to_scalar(), params.alpha_sigmas)?;
            let texture = synth_csf_texture(grid, &csf, rng)?;
            let image = blend(self.image, &texture, &alpha)?;
            let cavity_voxels = label.count();
            let metadata = ResectionMetadata {
                params: params.clone(),
                semiaxes: axes,
                seed_voxel,
                seed_point,
                surface_centroid: centroid,
                ellipsoid_volume: ellipsoid.foreground_volume(),
                cavity_volume: cavity_voxels as f64 * grid.voxel_volume(),
                cavity_voxels,
                csf,
                attempts: attempt,
            };
            return Ok(SimulationResult {
                image,
                label,
                surface,
                metadata,
            });
        }
        Err(Error::DegenerateCavity {
            attempts: params.max_attempts,
        })
    }
}

/// Single draw on one subject. For several draws on the same subject use a
/// [`ResectionContext`] so the masks are computed once.
pub fn simulate_resection<R: Rng + ?Sized>(
    image: &ScalarVolume,
    parcellation: &LabelVolume,
    map: &LabelCategoryMap,
    params: &ResectionParams,
    rng: &mut R,
) -> Result<SimulationResult> {
    ResectionContext::new(image, parcellation, map, ResectableOptions::default())?
        .simulate(params, rng)
}
