//! Instances, solutions and their JSON file formats.
//!
//! Every [`Instance`] is validated once, when it is constructed or read, and
//! is immutable afterwards.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::geom::{GeomError, Point, Polygon, COORD_LIMIT};

/// Item values of an instance must sum to strictly less than this.
pub const VALUE_SUM_LIMIT: u64 = 1 << 40;

pub const INSTANCE_TYPE: &str = "cgshop2024_instance";
pub const SOLUTION_TYPE: &str = "cgshop2024_solution";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub polygon: Polygon,
    pub value: u64,
}

/// Provenance recorded alongside an instance. Every field is optional so the
/// value function can be withheld from published files.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value_function: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    container: Polygon,
    items: Vec<Item>,
    meta: Option<InstanceMeta>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("container: {0}")]
    BadContainer(GeomError),
    #[error("container is not convex")]
    NonConvexContainer,
    #[error("item {index}: {source}")]
    BadItem { index: usize, source: GeomError },
    #[error("item {0} has zero value")]
    ZeroValue(usize),
    #[error("item values sum to {0}, limit is 2^40")]
    ValueOverflow(u128),
    #[error("coordinate outside +-2^50")]
    CoordinateOverflow,
    #[error("parallel arrays differ in length ({0})")]
    LengthMismatch(&'static str),
    #[error("duplicate item {0} in solution")]
    DuplicateItem(usize),
    #[error("unexpected file type {0:?}")]
    WrongType(String),
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Validation(#[from] ValidationError),
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        container: Polygon,
        items: Vec<Item>,
    ) -> Result<Instance, ValidationError> {
        Instance::with_meta(name, container, items, None)
    }

    pub fn with_meta(
        name: impl Into<String>,
        container: Polygon,
        items: Vec<Item>,
        meta: Option<InstanceMeta>,
    ) -> Result<Instance, ValidationError> {
        if !container.is_convex() {
            return Err(ValidationError::NonConvexContainer);
        }
        if !container.within_limit(COORD_LIMIT)
            || items.iter().any(|i| !i.polygon.within_limit(COORD_LIMIT))
        {
            return Err(ValidationError::CoordinateOverflow);
        }
        if let Some(index) = items.iter().position(|i| i.value == 0) {
            return Err(ValidationError::ZeroValue(index));
        }
        let total: u128 = items.iter().map(|i| i.value as u128).sum();
        if total >= VALUE_SUM_LIMIT as u128 {
            return Err(ValidationError::ValueOverflow(total));
        }
        Ok(Instance {
            name: name.into(),
            container,
            items,
            meta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn container(&self) -> &Polygon {
        &self.container
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn meta(&self) -> Option<&InstanceMeta> {
        self.meta.as_ref()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total_value(&self) -> u64 {
        self.items.iter().map(|i| i.value).sum()
    }

    /// Same geometry with new values (re-validated against the value bounds).
    pub fn with_values(&self, values: &[u64]) -> Result<Instance, ValidationError> {
        assert_eq!(values.len(), self.items.len());
        let items = self
            .items
            .iter()
            .zip(values)
            .map(|(it, &value)| Item {
                polygon: it.polygon.clone(),
                value,
            })
            .collect();
        Instance::with_meta(
            self.name.clone(),
            self.container.clone(),
            items,
            self.meta.clone(),
        )
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Instance {
        self.name = name.into();
        self
    }

    pub fn set_meta(&mut self, meta: Option<InstanceMeta>) {
        self.meta = meta;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Placement {
    pub item_index: usize,
    pub offset: Point,
}

impl Placement {
    pub fn new(item_index: usize, offset: Point) -> Placement {
        Placement { item_index, offset }
    }
}

/// A candidate packing. Placements are not validated here; that is the
/// verifier's job (files are still checked for duplicates when read).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solution {
    pub instance_name: String,
    pub placements: Vec<Placement>,
    pub submitted_at: Option<DateTime<Utc>>,
}

impl Solution {
    pub fn empty(instance_name: impl Into<String>) -> Solution {
        Solution {
            instance_name: instance_name.into(),
            placements: Vec::new(),
            submitted_at: None,
        }
    }

    pub fn new(instance_name: impl Into<String>, placements: Vec<Placement>) -> Solution {
        Solution {
            instance_name: instance_name.into(),
            placements,
            submitted_at: None,
        }
    }

    pub fn packed_value(&self, instance: &Instance) -> u64 {
        self.placements
            .iter()
            .map(|p| instance.items()[p.item_index].value)
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordsFile {
    x: Vec<i64>,
    y: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemFile {
    x: Vec<i64>,
    y: Vec<i64>,
    value: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(rename = "type")]
    kind: String,
    name: String,
    container: CoordsFile,
    items: Vec<ItemFile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    meta: Option<InstanceMeta>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    #[serde(rename = "type")]
    kind: String,
    instance_name: String,
    item_indices: Vec<usize>,
    x_translations: Vec<i64>,
    y_translations: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    submitted_at: Option<DateTime<Utc>>,
}

fn zip_points(x: &[i64], y: &[i64], what: &'static str) -> Result<Vec<Point>, ValidationError> {
    if x.len() != y.len() {
        return Err(ValidationError::LengthMismatch(what));
    }
    let pts: Vec<Point> = x.iter().zip(y).map(|(&x, &y)| Point::new(x, y)).collect();
    if pts.iter().any(|p| !p.within_limit(COORD_LIMIT)) {
        return Err(ValidationError::CoordinateOverflow);
    }
    Ok(pts)
}

fn unzip_points(pts: &[Point]) -> CoordsFile {
    CoordsFile {
        x: pts.iter().map(|p| p.x).collect(),
        y: pts.iter().map(|p| p.y).collect(),
    }
}

/// Parses and fully validates an instance file.
pub fn read_instance(bytes: &[u8]) -> Result<Instance, ModelError> {
    let file: InstanceFile = serde_json::from_slice(bytes)?;
    if file.kind != INSTANCE_TYPE {
        return Err(ValidationError::WrongType(file.kind).into());
    }
    let container = Polygon::new(zip_points(
        &file.container.x,
        &file.container.y,
        "container",
    )?)
    .map_err(ValidationError::BadContainer)?;
    let items = file
        .items
        .into_iter()
        .enumerate()
        .map(|(index, it)| {
            let polygon = Polygon::new(zip_points(&it.x, &it.y, "item")?)
                .map_err(|source| ValidationError::BadItem { index, source })?;
            Ok(Item {
                polygon,
                value: it.value,
            })
        })
        .collect::<Result<Vec<_>, ValidationError>>()?;
    Ok(Instance::with_meta(file.name, container, items, file.meta)?)
}

pub fn write_instance(instance: &Instance) -> Vec<u8> {
    let file = InstanceFile {
        kind: INSTANCE_TYPE.to_string(),
        name: instance.name.clone(),
        container: unzip_points(instance.container.vertices()),
        items: instance
            .items
            .iter()
            .map(|it| {
                let c = unzip_points(it.polygon.vertices());
                ItemFile {
                    x: c.x,
                    y: c.y,
                    value: it.value,
                }
            })
            .collect(),
        meta: instance.meta.clone(),
    };
    serde_json::to_vec(&file).expect("instance serializes")
}

/// Parses a solution file; rejects mismatched arrays, duplicate items and
/// translations beyond the coordinate limit.
pub fn read_solution(bytes: &[u8]) -> Result<Solution, ModelError> {
    let file: SolutionFile = serde_json::from_slice(bytes)?;
    if file.kind != SOLUTION_TYPE {
        return Err(ValidationError::WrongType(file.kind).into());
    }
    let n = file.item_indices.len();
    if file.x_translations.len() != n || file.y_translations.len() != n {
        return Err(ValidationError::LengthMismatch("translations").into());
    }
    let offsets = zip_points(&file.x_translations, &file.y_translations, "translations")?;
    let mut seen = std::collections::HashSet::with_capacity(n);
    for &i in &file.item_indices {
        if !seen.insert(i) {
            return Err(ValidationError::DuplicateItem(i).into());
        }
    }
    Ok(Solution {
        instance_name: file.instance_name,
        placements: file
            .item_indices
            .into_iter()
            .zip(offsets)
            .map(|(item_index, offset)| Placement { item_index, offset })
            .collect(),
        submitted_at: file.submitted_at,
    })
}

pub fn write_solution(solution: &Solution) -> Vec<u8> {
    let file = SolutionFile {
        kind: SOLUTION_TYPE.to_string(),
        instance_name: solution.instance_name.clone(),
        item_indices: solution.placements.iter().map(|p| p.item_index).collect(),
        x_translations: solution.placements.iter().map(|p| p.offset.x).collect(),
        y_translations: solution.placements.iter().map(|p| p.offset.y).collect(),
        submitted_at: solution.submitted_at,
    };
    serde_json::to_vec(&file).expect("solution serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"type":"cgshop2024_instance","name":"tiny","container":{"x":[0,10,0],"y":[0,0,10]},"items":[{"x":[0,2,0],"y":[0,0,2],"value":7}]}"#;

    #[test]
    fn reads_minimal_instance() {
        let inst = read_instance(MINIMAL.as_bytes()).unwrap();
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.items()[0].value, 7);
        assert_eq!(write_instance(&inst), MINIMAL.as_bytes());
    }

    #[test]
    fn rejects_bowtie_item() {
        let s = MINIMAL.replace(
            r#"{"x":[0,2,0],"y":[0,0,2]"#,
            r#"{"x":[0,2,2,0],"y":[0,2,0,2]"#,
        );
        let err = read_instance(s.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            ModelError::Validation(ValidationError::BadItem {
                index: 0,
                source: GeomError::NotSimple
            })
        ));
    }

    #[test]
    fn rejects_float_coordinates() {
        let s = MINIMAL.replace("[0,10,0]", "[0,10.0,0]");
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Parse(_))
        ));
    }

    #[test]
    fn rejects_non_convex_container_and_bad_values() {
        let s = MINIMAL.replace(
            r#""container":{"x":[0,10,0],"y":[0,0,10]}"#,
            r#""container":{"x":[0,4,4,2,0],"y":[0,0,4,1,4]}"#,
        );
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Validation(ValidationError::NonConvexContainer))
        ));
        let s = MINIMAL.replace(r#""value":7"#, r#""value":0"#);
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Validation(ValidationError::ZeroValue(0)))
        ));
        let s = MINIMAL.replace(r#""value":7"#, &format!(r#""value":{}"#, 1u64 << 40));
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Validation(ValidationError::ValueOverflow(_)))
        ));
        let s = MINIMAL.replace("[0,10,0]", &format!("[0,{},0]", (1i64 << 50) + 1));
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Validation(ValidationError::CoordinateOverflow))
        ));
        let s = MINIMAL.replace("cgshop2024_instance", "something_else");
        assert!(matches!(
            read_instance(s.as_bytes()),
            Err(ModelError::Validation(ValidationError::WrongType(_)))
        ));
    }

    #[test]
    fn empty_solution_round_trips() {
        let s = r#"{"type":"cgshop2024_solution","instance_name":"tiny","item_indices":[],"x_translations":[],"y_translations":[]}"#;
        let sol = read_solution(s.as_bytes()).unwrap();
        assert!(sol.placements.is_empty());
        assert_eq!(write_solution(&sol), s.as_bytes());
    }

    #[test]
    fn solution_rejects_duplicates_and_mismatch() {
        let dup = r#"{"type":"cgshop2024_solution","instance_name":"t","item_indices":[1,1],"x_translations":[0,0],"y_translations":[0,0]}"#;
        assert!(matches!(
            read_solution(dup.as_bytes()),
            Err(ModelError::Validation(ValidationError::DuplicateItem(1)))
        ));
        let short = r#"{"type":"cgshop2024_solution","instance_name":"t","item_indices":[1],"x_translations":[0,0],"y_translations":[0]}"#;
        assert!(matches!(
            read_solution(short.as_bytes()),
            Err(ModelError::Validation(ValidationError::LengthMismatch(_)))
        ));
    }
}
