//! Exact geometry on integer-coordinate polygons.
//!
//! No floating point enters any decision made here; every predicate is
//! evaluated in `i128` (or arbitrary precision for the rectangle areas).

mod hull;
mod overlap;
mod point;
mod polygon;

pub use hull::{convex_hull, min_area_bounding_rect, min_area_rect, MinRect};
pub use overlap::{contained_in_convex, interiors_overlap};
pub use point::{orient, segments_intersect, BBox, Point, COORD_LIMIT};
pub use polygon::{
    is_convex, is_simple, locate_point, signed_area, twice_signed_area, Location, Polygon,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple")]
    NotSimple,
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is clockwise")]
    Clockwise,
    #[error("points have no two-dimensional extent")]
    AllCollinear,
}
