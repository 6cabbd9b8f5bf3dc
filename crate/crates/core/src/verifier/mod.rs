//! Exact feasibility checks for a solution: index sanity, containment in the
//! container, and pairwise interior disjointness. A quad tree over the
//! translated bounding boxes limits the exact pair tests to nearby items.

mod quadtree;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::geom::{contained_in_convex, interiors_overlap, BBox, Point};
use crate::model::{Instance, Solution};

pub use quadtree::{QuadTree, DEFAULT_CAPACITY, DEFAULT_MAX_DEPTH};

/// Translations beyond this cannot keep an item inside a container whose
/// coordinates are bounded by the coordinate limit.
const MAX_OFFSET: i64 = 1 << 51;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    IndexOutOfRange,
    DuplicateItem,
    NotContained,
    Overlap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub item_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub packed_value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl VerifyReport {
    fn ok(packed_value: u64) -> VerifyReport {
        VerifyReport {
            valid: true,
            packed_value,
            violation: None,
        }
    }

    pub fn invalid(kind: ViolationKind, item_indices: Vec<usize>) -> VerifyReport {
        VerifyReport {
            valid: false,
            packed_value: 0,
            violation: Some(Violation { kind, item_indices }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("solution is for instance {solution:?}, not {instance:?}")]
    InstanceMismatch { instance: String, solution: String },
}

fn placed_box(instance: &Instance, index: usize, offset: Point) -> BBox {
    instance.items()[index].polygon.bbox().translate(offset)
}

/// Quad tree over the translated boxes of all placements, keyed by item
/// index. Placements must reference distinct, existing items.
pub fn build_index(instance: &Instance, solution: &Solution) -> QuadTree {
    let boxes: Vec<(usize, BBox)> = solution
        .placements
        .iter()
        .map(|p| (p.item_index, placed_box(instance, p.item_index, p.offset)))
        .collect();
    let region = boxes
        .iter()
        .fold(instance.container().bbox(), |r, (_, b)| r.union(b));
    let mut tree = QuadTree::new(region);
    for (id, b) in boxes {
        tree.insert(id, b);
    }
    tree
}

/// Checks `solution` against `instance`. Reported violations are the smallest
/// offending item indices of the first failing check, so the report does not
/// depend on the order of the placements.
pub fn verify(instance: &Instance, solution: &Solution) -> Result<VerifyReport, VerifyError> {
    if instance.name() != solution.instance_name {
        return Err(VerifyError::InstanceMismatch {
            instance: instance.name().to_string(),
            solution: solution.instance_name.clone(),
        });
    }
    Ok(verify_placements(instance, solution))
}

/// [`verify`] without the instance-name check.
pub fn verify_placements(instance: &Instance, solution: &Solution) -> VerifyReport {
    let n = instance.len();
    let placements = &solution.placements;

    if let Some(i) = placements
        .iter()
        .map(|p| p.item_index)
        .filter(|&i| i >= n)
        .min()
    {
        return VerifyReport::invalid(ViolationKind::IndexOutOfRange, vec![i]);
    }
    let mut seen = HashSet::with_capacity(placements.len());
    if let Some(i) = placements
        .iter()
        .map(|p| p.item_index)
        .filter(|&i| !seen.insert(i))
        .min()
    {
        return VerifyReport::invalid(ViolationKind::DuplicateItem, vec![i]);
    }

    let container = instance.container();
    let outside = placements
        .par_iter()
        .filter(|p| {
            p.offset.x.abs() > MAX_OFFSET
                || p.offset.y.abs() > MAX_OFFSET
                || !contained_in_convex(
                    container,
                    &instance.items()[p.item_index].polygon,
                    p.offset,
                )
        })
        .map(|p| p.item_index)
        .min();
    if let Some(i) = outside {
        return VerifyReport::invalid(ViolationKind::NotContained, vec![i]);
    }

    let mut offsets = vec![Point::ORIGIN; n];
    for p in placements {
        offsets[p.item_index] = p.offset;
    }
    let tree = build_index(instance, solution);
    let pairs = tree.candidate_pairs();
    let items = instance.items();
    let hit = pairs.par_iter().find_first(|&&(a, b)| {
        interiors_overlap(&items[a].polygon, offsets[a], &items[b].polygon, offsets[b])
    });
    if let Some(&(a, b)) = hit {
        return VerifyReport::invalid(ViolationKind::Overlap, vec![a, b]);
    }
    VerifyReport::ok(solution.packed_value(instance))
}
