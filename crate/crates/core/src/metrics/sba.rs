use crate::error::{Error, Result};
use crate::volume::{signed_distance_f64, BinaryMask, Volume};

/// Binary segmentations of the same structure by several raters, all on one
/// grid.
#[derive(Debug, Clone)]
pub struct RaterSet {
    names: Vec<String>,
    masks: Vec<BinaryMask>,
}

impl RaterSet {
    pub fn new() -> Self {
        Self {
            names: Vec::new(),
            masks: Vec::new(),
        }
    }

    /// Adds a rater; the grid must match the raters already present.
    pub fn push(&mut self, name: impl Into<String>, mask: BinaryMask) -> Result<()> {
        let name = name.into();
        if let Some(first) = self.masks.first() {
            first.grid().ensure_same(
                mask.grid(),
                &format!("rater {name:?} vs {:?}", self.names[0]),
            )?;
        }
        self.names.push(name);
        self.masks.push(mask);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn masks(&self) -> &[BinaryMask] {
        &self.masks
    }

    /// The same set without rater `index`.
    pub fn without(&self, index: usize) -> RaterSet {
        let (mut names, mut masks) = (self.names.clone(), self.masks.clone());
        if index < names.len() {
            names.remove(index);
            masks.remove(index);
        }
        RaterSet { names, masks }
    }
}

impl Default for RaterSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Shape-based averaging: a voxel is in the consensus when the mean of the
/// raters' signed distance maps (negative inside) is at most zero.
///
/// A rater without foreground contributes `+∞` everywhere and empties the
/// consensus; a rater covering the whole grid has no defined boundary and is
/// an error.
pub fn sba_consensus(raters: &RaterSet) -> Result<BinaryMask> {
    if raters.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "consensus needs at least two raters, got {}",
            raters.len()
        )));
    }
    let grid = *raters.masks[0].grid();
    let mut sum = vec![0.0f64; grid.len()];
    for mask in &raters.masks {
        let sd = signed_distance_f64(mask)?;
        for (s, d) in sum.iter_mut().zip(sd.data()) {
            *s += d;
        }
    }
    let k = raters.len() as f64;
    Volume::new(grid, sum.into_iter().map(|s| s / k <= 0.0).collect())
}

/// One consensus per rater, built from all the other raters.
pub fn leave_one_out_consensus(raters: &RaterSet) -> Result<Vec<BinaryMask>> {
    if raters.len() < 3 {
        return Err(Error::InvalidInput(
            "leave-one-out consensus needs at least three raters".into(),
        ));
    }
    (0..raters.len())
        .map(|i| sba_consensus(&raters.without(i)))
        .collect()
}
