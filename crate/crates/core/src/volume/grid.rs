use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Axis-aligned voxel grid. Voxel `(i, j, k)` has its centre at
/// `origin + (i, j, k) * spacing`, in millimetres; `i` varies fastest in
/// memory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dims: [usize; 3],
    spacing: [f64; 3],
    origin: [f64; 3],
}

impl Grid {
    pub fn new(dims: [usize; 3], spacing: [f64; 3], origin: [f64; 3]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "grid dimensions must be >= 1, got {dims:?}"
            )));
        }
        if spacing.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "grid spacing must be positive, got {spacing:?}"
            )));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidParameter("grid origin must be finite".into()));
        }
        Ok(Self {
            dims,
            spacing,
            origin,
        })
    }

    /// Unit-spaced grid with its first voxel at the origin.
    pub fn with_dims(dims: [usize; 3]) -> Result<Self> {
        Self::new(dims, [1.0; 3], [0.0; 3])
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume of one voxel in mm³.
    pub fn voxel_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    #[inline]
    pub fn linear_index(&self, [i, j, k]: [usize; 3]) -> usize {
        i + self.dims[0] * (j + self.dims[1] * k)
    }

    #[inline]
    pub fn voxel_index(&self, idx: usize) -> [usize; 3] {
        let [nx, ny, _] = self.dims;
        [idx % nx, (idx / nx) % ny, idx / (nx * ny)]
    }

    /// Centre of a voxel in millimetres.
    pub fn voxel_to_world(&self, ijk: [usize; 3]) -> Point3 {
        [0, 1, 2].map(|a| self.origin[a] + ijk[a] as f64 * self.spacing[a])
    }

    /// Continuous voxel coordinates of a point.
    pub fn world_to_voxel(&self, p: Point3) -> Point3 {
        [0, 1, 2].map(|a| (p[a] - self.origin[a]) / self.spacing[a])
    }

    pub fn contains(&self, ijk: [isize; 3]) -> bool {
        (0..3).all(|a| ijk[a] >= 0 && (ijk[a] as usize) < self.dims[a])
    }

    pub fn ensure_same(&self, other: &Grid, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{what}: dims {:?} / {:?}, spacing {:?} / {:?}, origin {:?} / {:?}",
                self.dims, other.dims, self.spacing, other.spacing, self.origin, other.origin
            )))
        }
    }
}

/// Values on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Volume<T> {
    grid: Grid,
    data: Vec<T>,
}

/// Image intensities.
pub type ScalarVolume = Volume<f32>;
/// Integer parcellation labels.
pub type LabelVolume = Volume<i32>;
/// Binary mask; the element type makes the `{0, 1}` invariant structural.
pub type BinaryMask = Volume<bool>;

impl<T> Volume<T> {
    pub fn new(grid: Grid, data: Vec<T>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "buffer holds {} values but the grid has {} voxels",
                data.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, data })
    }

    pub fn filled(grid: Grid, value: T) -> Self
    where
        T: Clone,
    {
        Self {
            grid,
            data: vec![value; grid.len()],
        }
    }

    /// Builds a volume by evaluating `f` at every voxel index.
    pub fn from_fn(grid: Grid, mut f: impl FnMut([usize; 3]) -> T) -> Self {
        let data = (0..grid.len()).map(|i| f(grid.voxel_index(i))).collect();
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, ijk: [usize; 3]) -> &T {
        &self.data[self.grid.linear_index(ijk)]
    }

    pub fn set(&mut self, ijk: [usize; 3], value: T) {
        let idx = self.grid.linear_index(ijk);
        self.data[idx] = value;
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Volume<U> {
        Volume {
            grid: self.grid,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn ensure_same_grid<U>(&self, other: &Volume<U>, what: &str) -> Result<()> {
        self.grid.ensure_same(&other.grid, what)
    }
}

impl BinaryMask {
    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_empty_mask(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    /// Foreground volume in mm³.
    pub fn foreground_volume(&self) -> f64 {
        self.count() as f64 * self.grid.voxel_volume()
    }

    pub fn and(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.ensure_same_grid(other, "mask intersection")?;
        Ok(self.zip_with(other, |a, b| a && b))
    }

    pub fn or(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.ensure_same_grid(other, "mask union")?;
        Ok(self.zip_with(other, |a, b| a || b))
    }

    pub fn not(&self) -> BinaryMask {
        self.map(|&b| !b)
    }

    /// True when every foreground voxel of `self` is foreground in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> Result<bool> {
        self.ensure_same_grid(other, "mask inclusion")?;
        Ok(self.data.iter().zip(&other.data).all(|(&a, &b)| !a || b))
    }

    pub fn to_scalar(&self) -> ScalarVolume {
        self.map(|&b| if b { 1.0 } else { 0.0 })
    }

    /// Foreground voxel indices in memory order.
    pub fn foreground(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.grid.voxel_index(i))
    }

    fn zip_with(&self, other: &BinaryMask, f: impl Fn(bool, bool) -> bool) -> BinaryMask {
        Volume {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}
