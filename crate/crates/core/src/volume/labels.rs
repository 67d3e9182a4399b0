use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::{morphology, BinaryMask, LabelVolume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hemisphere {
    Left,
    Right,
}

impl Hemisphere {
    pub fn opposite(self) -> Self {
        match self {
            Hemisphere::Left => Hemisphere::Right,
            Hemisphere::Right => Hemisphere::Left,
        }
    }

    pub fn gray_matter(self) -> Category {
        match self {
            Hemisphere::Left => Category::GrayMatterLeft,
            Hemisphere::Right => Category::GrayMatterRight,
        }
    }

    pub fn hemisphere(self) -> Category {
        match self {
            Hemisphere::Left => Category::HemisphereLeft,
            Hemisphere::Right => Category::HemisphereRight,
        }
    }
}

impl fmt::Display for Hemisphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hemisphere::Left => "left",
            Hemisphere::Right => "right",
        })
    }
}

/// Anatomical groups of parcellation labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "background")]
    Background,
    #[serde(rename = "brainstem")]
    Brainstem,
    #[serde(rename = "cerebellum")]
    Cerebellum,
    #[serde(rename = "gm-left")]
    GrayMatterLeft,
    #[serde(rename = "gm-right")]
    GrayMatterRight,
    #[serde(rename = "hemisphere-left")]
    HemisphereLeft,
    #[serde(rename = "hemisphere-right")]
    HemisphereRight,
    #[serde(rename = "ventricles")]
    Ventricles,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Background,
        Category::Brainstem,
        Category::Cerebellum,
        Category::GrayMatterLeft,
        Category::GrayMatterRight,
        Category::HemisphereLeft,
        Category::HemisphereRight,
        Category::Ventricles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Background => "background",
            Category::Brainstem => "brainstem",
            Category::Cerebellum => "cerebellum",
            Category::GrayMatterLeft => "gm-left",
            Category::GrayMatterRight => "gm-right",
            Category::HemisphereLeft => "hemisphere-left",
            Category::HemisphereRight => "hemisphere-right",
            Category::Ventricles => "ventricles",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown label category {s:?}")))
    }
}

/// Category pairs whose label sets may not share a label.
const EXCLUSIVE: &[(Category, Category)] = {
    use Category::*;
    &[
        (Background, Brainstem),
        (Background, Cerebellum),
        (Background, GrayMatterLeft),
        (Background, GrayMatterRight),
        (Background, HemisphereLeft),
        (Background, HemisphereRight),
        (Background, Ventricles),
        (Brainstem, Cerebellum),
        (Brainstem, GrayMatterLeft),
        (Brainstem, GrayMatterRight),
        (Brainstem, HemisphereLeft),
        (Brainstem, HemisphereRight),
        (Cerebellum, GrayMatterLeft),
        (Cerebellum, GrayMatterRight),
        (Cerebellum, HemisphereLeft),
        (Cerebellum, HemisphereRight),
        (GrayMatterLeft, GrayMatterRight),
        (GrayMatterLeft, HemisphereRight),
        (GrayMatterRight, HemisphereLeft),
        (HemisphereLeft, HemisphereRight),
    ]
};

/// Which parcellation labels make up each [`Category`]. Categories may be
/// absent; asking for an absent one is a configuration error at use time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelCategoryMap {
    sets: BTreeMap<Category, BTreeSet<i32>>,
}

impl LabelCategoryMap {
    /// Validates the exclusivity rules (background vs tissue, left vs right,
    /// hemispheres vs brainstem and cerebellum).
    pub fn new(sets: BTreeMap<Category, BTreeSet<i32>>) -> Result<Self> {
        for &(a, b) in EXCLUSIVE {
            if let (Some(sa), Some(sb)) = (sets.get(&a), sets.get(&b)) {
                if let Some(label) = sa.intersection(sb).next() {
                    return Err(Error::Config(format!(
                        "label {label} appears in both {a} and {b}"
                    )));
                }
            }
        }
        Ok(Self { sets })
    }

    pub fn builder() -> LabelCategoryMapBuilder {
        LabelCategoryMapBuilder::default()
    }

    pub fn get(&self, category: Category) -> Option<&BTreeSet<i32>> {
        self.sets.get(&category)
    }

    pub fn contains(&self, category: Category) -> bool {
        self.sets.contains_key(&category)
    }

    pub fn require(&self, category: Category) -> Result<&BTreeSet<i32>> {
        self.get(category).ok_or_else(|| {
            Error::Config(format!(
                "label map has no \"{category}\" category, which this operation needs"
            ))
        })
    }

    pub fn categories(&self) -> impl Iterator<Item = (Category, &BTreeSet<i32>)> {
        self.sets.iter().map(|(c, s)| (*c, s))
    }
}

#[derive(Debug, Default)]
pub struct LabelCategoryMapBuilder {
    sets: BTreeMap<Category, BTreeSet<i32>>,
}

impl LabelCategoryMapBuilder {
    pub fn set(mut self, category: Category, labels: impl IntoIterator<Item = i32>) -> Self {
        self.sets.insert(category, labels.into_iter().collect());
        self
    }

    pub fn build(self) -> Result<LabelCategoryMap> {
        LabelCategoryMap::new(self.sets)
    }
}

/// Voxels whose label belongs to any of the requested categories.
pub fn category_mask(
    parcellation: &LabelVolume,
    map: &LabelCategoryMap,
    categories: &[Category],
) -> Result<BinaryMask> {
    let mut labels = BTreeSet::new();
    for &c in categories {
        let set = map.require(c)?;
        if set.is_empty() {
            log::warn!("label category {c} has no labels; its mask is empty");
        }
        labels.extend(set.iter().copied());
    }
    Ok(label_membership(parcellation, &labels, true))
}

fn label_membership(
    parcellation: &LabelVolume,
    labels: &BTreeSet<i32>,
    member: bool,
) -> BinaryMask {
    // Lookup table over the observed label range; parcellations rarely span
    // more than a few thousand values.
    let (lo, hi) = parcellation
        .data()
        .iter()
        .fold((i32::MAX, i32::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if lo > hi {
        return parcellation.map(|_| !member);
    }
    let span = (hi as i64 - lo as i64 + 1) as usize;
    if span <= 1 << 20 {
        let mut table = vec![!member; span];
        for &l in labels.range(lo..=hi) {
            table[(l as i64 - lo as i64) as usize] = member;
        }
        parcellation.map(|&v| table[(v as i64 - lo as i64) as usize])
    } else {
        parcellation.map(|v| labels.contains(v) == member)
    }
}

/// Tunables for [`resectable_mask`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResectableOptions {
    /// Radius, in voxels, of the ball used for closing and then opening.
    pub smoothing_radius: f64,
}

impl Default for ResectableOptions {
    fn default() -> Self {
        Self {
            smoothing_radius: 3.0,
        }
    }
}

/// Voxels that may be resected in `hemisphere`: anything not labelled as
/// background, brainstem, cerebellum or the contralateral hemisphere, then
/// smoothed by a morphological closing followed by an opening.
///
/// The smoothed result is finally intersected with the raw eligibility mask,
/// so closing can never re-admit an excluded structure.
pub fn resectable_mask(
    parcellation: &LabelVolume,
    map: &LabelCategoryMap,
    hemisphere: Hemisphere,
    options: &ResectableOptions,
) -> Result<BinaryMask> {
    let mut excluded = BTreeSet::new();
    for c in [
        Category::Background,
        Category::Brainstem,
        Category::Cerebellum,
        hemisphere.opposite().hemisphere(),
    ] {
        excluded.extend(map.require(c)?.iter().copied());
    }
    let eligible = label_membership(parcellation, &excluded, false);
    if options.smoothing_radius <= 0.0 {
        return Ok(eligible);
    }
    let closed = morphology::closing(&eligible, options.smoothing_radius);
    let opened = morphology::opening(&closed, options.smoothing_radius);
    opened.and(&eligible)
}
