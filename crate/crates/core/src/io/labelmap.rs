//! JSON label maps.
//!
//! ```json
//! {
//!   "background": [0],
//!   "brainstem": [16],
//!   "cerebellum": [7, 8, 46, 47],
//!   "gm-left": [3],
//!   "gm-right": [42],
//!   "hemisphere-left": [2, 3, 4, 5],
//!   "hemisphere-right": [41, 42, 43, 44],
//!   "ventricles": [4, 43],
//!   "names": {"3": "left cerebral cortex"}
//! }
//! ```
//!
//! Every key is optional; a missing category only fails when an operation
//! needs it.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::{Category, LabelCategoryMap};

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelMapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    background: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    brainstem: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cerebellum: Option<Vec<i32>>,
    #[serde(default, rename = "gm-left", skip_serializing_if = "Option::is_none")]
    gm_left: Option<Vec<i32>>,
    #[serde(default, rename = "gm-right", skip_serializing_if = "Option::is_none")]
    gm_right: Option<Vec<i32>>,
    #[serde(
        default,
        rename = "hemisphere-left",
        skip_serializing_if = "Option::is_none"
    )]
    hemisphere_left: Option<Vec<i32>>,
    #[serde(
        default,
        rename = "hemisphere-right",
        skip_serializing_if = "Option::is_none"
    )]
    hemisphere_right: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ventricles: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    names: BTreeMap<String, String>,
}

impl LabelMapFile {
    fn entries(self) -> Vec<(Category, Option<Vec<i32>>)> {
        use Category::*;
        vec![
            (Background, self.background),
            (Brainstem, self.brainstem),
            (Cerebellum, self.cerebellum),
            (GrayMatterLeft, self.gm_left),
            (GrayMatterRight, self.gm_right),
            (HemisphereLeft, self.hemisphere_left),
            (HemisphereRight, self.hemisphere_right),
            (Ventricles, self.ventricles),
        ]
    }
}

/// A label map together with optional display names per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMapDocument {
    pub map: LabelCategoryMap,
    pub names: BTreeMap<i32, String>,
}

fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&needle))
        .map_or(1, |i| i + 1)
}

/// Parses label-map JSON. `path` only labels diagnostics.
pub fn parse_labelmap(text: &str, path: &Path) -> Result<LabelMapDocument> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.into(),
        line,
        message,
    };
    let file: LabelMapFile =
        serde_json::from_str(text).map_err(|e| parse_err(e.line().max(1), e.to_string()))?;

    let mut names = BTreeMap::new();
    for (key, name) in &file.names {
        let label = key.trim().parse::<i32>().map_err(|_| {
            parse_err(
                line_of_key(text, key),
                format!("names key \"{key}\" is not an integer label"),
            )
        })?;
        names.insert(label, name.clone());
    }

    let mut sets: BTreeMap<Category, BTreeSet<i32>> = BTreeMap::new();
    for (category, labels) in file.entries() {
        if let Some(labels) = labels {
            sets.insert(category, labels.into_iter().collect());
            // Validate incrementally so the error points at the later key.
            if let Err(Error::Config(message)) = LabelCategoryMap::new(sets.clone()) {
                return Err(parse_err(line_of_key(text, category.name()), message));
            }
        }
    }
    let map = LabelCategoryMap::new(sets).expect("validated above");
    Ok(LabelMapDocument { map, names })
}

/// Reads a label-map JSON file.
pub fn read_labelmap(path: impl AsRef<Path>) -> Result<LabelCategoryMap> {
    Ok(read_labelmap_document(path)?.map)
}

/// Reads a label-map JSON file keeping the label names.
pub fn read_labelmap_document(path: impl AsRef<Path>) -> Result<LabelMapDocument> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_labelmap(&text, path)
}

/// Serializes a label map as pretty JSON in the schema read above.
pub fn labelmap_to_json(map: &LabelCategoryMap) -> String {
    let get = |c| {
        map.get(c)
            .map(|s: &BTreeSet<i32>| s.iter().copied().collect())
    };
    let file = LabelMapFile {
        background: get(Category::Background),
        brainstem: get(Category::Brainstem),
        cerebellum: get(Category::Cerebellum),
        gm_left: get(Category::GrayMatterLeft),
        gm_right: get(Category::GrayMatterRight),
        hemisphere_left: get(Category::HemisphereLeft),
        hemisphere_right: get(Category::HemisphereRight),
        ventricles: get(Category::Ventricles),
        names: BTreeMap::new(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n"
}

/// Writes a label map as JSON.
pub fn write_labelmap(path: impl AsRef<Path>, map: &LabelCategoryMap) -> Result<()> {
    crate::io::write_atomically(path.as_ref(), labelmap_to_json(map).as_bytes())
}
