use num_bigint::BigInt;
use num_rational::BigRational;

use super::point::{dot, orient, segments_intersect, BBox, Point};
use super::GeomError;

/// A simple polygon with counterclockwise vertex order and positive area.
///
/// The only way to obtain one is through a validating constructor, so every
/// other module can rely on the invariants without re-checking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
    bbox: BBox,
}

impl Polygon {
    /// Validates `vertices` as a simple counterclockwise polygon.
    pub fn new(vertices: Vec<Point>) -> Result<Polygon, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if !is_simple(&vertices) {
            return Err(GeomError::NotSimple);
        }
        match twice_signed_area(&vertices) {
            a if a > 0 => {}
            0 => return Err(GeomError::ZeroArea),
            _ => return Err(GeomError::Clockwise),
        }
        let bbox = BBox::of_points(&vertices);
        Ok(Polygon { vertices, bbox })
    }

    /// Like [`Polygon::new`] but reverses clockwise input instead of rejecting it.
    pub fn new_normalized(mut vertices: Vec<Point>) -> Result<Polygon, GeomError> {
        if vertices.len() >= 3 && twice_signed_area(&vertices) < 0 {
            vertices.reverse();
        }
        Polygon::new(vertices)
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Polygon, GeomError> {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub(crate) fn from_trusted(vertices: Vec<Point>) -> Polygon {
        debug_assert!(is_simple(&vertices) && twice_signed_area(&vertices) > 0);
        let bbox = BBox::of_points(&vertices);
        Polygon { vertices, bbox }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn twice_area(&self) -> i128 {
        twice_signed_area(&self.vertices)
    }

    pub fn area(&self) -> BigRational {
        signed_area(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        is_convex(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Copy of this polygon moved by `t`.
    pub fn translated(&self, t: Point) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&p| p + t).collect(),
            bbox: self.bbox.translate(t),
        }
    }

    /// Copy moved so that its bounding box starts at the origin, plus the
    /// offset that moves it back.
    pub fn normalized_to_origin(&self) -> (Polygon, Point) {
        let shift = Point::new(self.bbox.min_x, self.bbox.min_y);
        (self.translated(Point::new(-shift.x, -shift.y)), shift)
    }

    pub fn within_limit(&self, limit: i64) -> bool {
        self.vertices.iter().all(|p| p.within_limit(limit))
    }
}

/// Twice the shoelace sum. Exact for coordinates within [`super::COORD_LIMIT`].
pub fn twice_signed_area(vertices: &[Point]) -> i128 {
    let n = vertices.len();
    if n < 3 {
        return 0;
    }
    let o = vertices[0];
    (1..n - 1)
        .map(|i| orient(o, vertices[i], vertices[i + 1]))
        .sum()
}

/// Exact signed area; positive iff the vertex order is counterclockwise.
pub fn signed_area(vertices: &[Point]) -> BigRational {
    BigRational::new(BigInt::from(twice_signed_area(vertices)), BigInt::from(2))
}

/// Simplicity test with exact integer predicates.
///
/// Rejects repeated vertices, zero-length edges, adjacent edges folding back
/// onto each other and any contact between non-adjacent edges. Candidate edge
/// pairs come from a sweep over the edges' x-extents.
pub fn is_simple(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        if orient(a, b, c) == 0 && dot(b - a, c - b) < 0 {
            return false;
        }
    }
    if n == 3 {
        return true;
    }

    struct Edge {
        idx: usize,
        a: Point,
        b: Point,
        min_x: i64,
        max_x: i64,
        min_y: i64,
        max_y: i64,
    }
    let mut edges: Vec<Edge> = (0..n)
        .map(|idx| {
            let a = vertices[idx];
            let b = vertices[(idx + 1) % n];
            Edge {
                idx,
                a,
                b,
                min_x: a.x.min(b.x),
                max_x: a.x.max(b.x),
                min_y: a.y.min(b.y),
                max_y: a.y.max(b.y),
            }
        })
        .collect();
    edges.sort_unstable_by_key(|e| (e.min_x, e.idx));

    for (k, e) in edges.iter().enumerate() {
        for f in &edges[k + 1..] {
            if f.min_x > e.max_x {
                break;
            }
            let gap = e.idx.abs_diff(f.idx);
            if gap == 1 || gap == n - 1 {
                continue;
            }
            if f.min_y > e.max_y || e.min_y > f.max_y {
                continue;
            }
            if segments_intersect(e.a, e.b, f.a, f.b) {
                return false;
            }
        }
    }
    true
}

/// True iff every consecutive vertex triple turns left or goes straight.
/// Assumes a simple, counterclockwise input.
pub fn is_convex(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    (0..n).all(|i| orient(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) >= 0)
}

/// Where a point lies relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Exact point location via the winding number.
pub fn locate_point(vertices: &[Point], p: Point) -> Location {
    let wide: Vec<[i128; 2]> = vertices
        .iter()
        .map(|v| [v.x as i128, v.y as i128])
        .collect();
    locate_wide(&wide, [p.x as i128, p.y as i128])
}

#[inline]
pub(crate) fn orient_wide(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

pub(crate) fn locate_wide(vertices: &[[i128; 2]], p: [i128; 2]) -> Location {
    let n = vertices.len();
    let mut winding = 0i32;
    for i in 0..n {
        let u = vertices[i];
        let w = vertices[(i + 1) % n];
        let o = orient_wide(u, w, p);
        if o == 0
            && u[0].min(w[0]) <= p[0]
            && p[0] <= u[0].max(w[0])
            && u[1].min(w[1]) <= p[1]
            && p[1] <= u[1].max(w[1])
        {
            return Location::Boundary;
        }
        if u[1] <= p[1] {
            if w[1] > p[1] && o > 0 {
                winding += 1;
            }
        } else if w[1] <= p[1] && o < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn shoelace_basics() {
        let sq = pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(signed_area(&sq), BigRational::from_integer(1.into()));
        let tri = pts(&[(0, 0), (4, 0), (0, 3)]);
        assert_eq!(signed_area(&tri), BigRational::from_integer(6.into()));
        let mut cw = tri.clone();
        cw.reverse();
        assert_eq!(signed_area(&cw), BigRational::from_integer((-6).into()));
        assert_eq!(twice_signed_area(&pts(&[(0, 0), (1, 1), (2, 2)])), 0);
    }

    #[test]
    fn simplicity_cases() {
        assert!(is_simple(&pts(&[(0, 0), (3, 0), (4, 2), (1, 3)])));
        assert!(!is_simple(&pts(&[(0, 0), (2, 2), (2, 0), (0, 2)])));
        // repeated vertex
        assert!(!is_simple(&pts(&[
            (0, 0),
            (2, 0),
            (1, 1),
            (2, 2),
            (0, 2),
            (1, 1)
        ])));
        // zero-length edge
        assert!(!is_simple(&pts(&[(0, 0), (2, 0), (2, 0), (0, 2)])));
        // spike folding back on itself
        assert!(!is_simple(&pts(&[(0, 0), (4, 0), (2, 0), (2, 2)])));
        // vertex touching a non-adjacent edge
        assert!(!is_simple(&pts(&[(0, 0), (4, 0), (4, 4), (2, 0), (0, 4)])));
        // collinear consecutive vertices are fine
        assert!(is_simple(&pts(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])));
    }

    #[test]
    fn convexity_cases() {
        let hex = pts(&[(2, 0), (4, 0), (5, 2), (4, 4), (2, 4), (1, 2)]);
        assert!(is_convex(&hex));
        let l_hexomino = pts(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 4), (0, 4)]);
        assert!(is_simple(&l_hexomino));
        assert!(!is_convex(&l_hexomino));
        assert!(is_convex(&pts(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            Polygon::new(pts(&[(0, 0), (1, 0)])),
            Err(GeomError::TooFewVertices(2))
        );
        assert_eq!(
            Polygon::new(pts(&[(0, 0), (0, 1), (1, 0)])),
            Err(GeomError::Clockwise)
        );
        assert_eq!(
            Polygon::new(pts(&[(0, 0), (2, 2), (2, 0), (0, 2)])),
            Err(GeomError::NotSimple)
        );
        assert!(Polygon::new_normalized(pts(&[(0, 0), (0, 1), (1, 0)])).is_ok());
    }

    #[test]
    fn point_location() {
        let sq = pts(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        assert_eq!(locate_point(&sq, Point::new(2, 2)), Location::Inside);
        assert_eq!(locate_point(&sq, Point::new(4, 2)), Location::Boundary);
        assert_eq!(locate_point(&sq, Point::new(0, 0)), Location::Boundary);
        assert_eq!(locate_point(&sq, Point::new(5, 2)), Location::Outside);
        let u = pts(&[
            (0, 0),
            (3, 0),
            (3, 3),
            (2, 3),
            (2, 1),
            (1, 1),
            (1, 3),
            (0, 3),
        ]);
        assert_eq!(locate_point(&u, Point::new(1, 2)), Location::Boundary);
        assert_eq!(locate_point(&u, Point::new(2, 2)), Location::Boundary);
        assert_eq!(
            locate_wide(
                &u.iter()
                    .map(|p| [2 * p.x as i128, 2 * p.y as i128])
                    .collect::<Vec<_>>(),
                [3, 4]
            ),
            Location::Outside
        );
    }
}
