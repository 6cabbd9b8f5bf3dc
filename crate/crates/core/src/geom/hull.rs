use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;

use super::point::{dot, orient, Point};
use super::polygon::Polygon;
use super::GeomError;

/// Strict convex hull (collinear boundary points dropped), counterclockwise,
/// starting at the lexicographically smallest point.
pub fn convex_hull(points: &[Point]) -> Result<Polygon, GeomError> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return Err(GeomError::AllCollinear);
    }

    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeomError::AllCollinear);
    }
    Ok(Polygon::from_trusted(lower))
}

/// Minimum-area enclosing rectangle over all orientations.
#[derive(Debug, Clone, PartialEq)]
pub struct MinRect {
    pub area: BigRational,
    /// Squared side length along the supporting hull edge.
    pub width_sq: BigRational,
    /// Squared side length perpendicular to it.
    pub height_sq: BigRational,
}

impl MinRect {
    /// Longer side over shorter side, as a float (used only for shape filters
    /// and metrics).
    pub fn aspect_ratio(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (a, b) = if self.width_sq >= self.height_sq {
            (&self.width_sq, &self.height_sq)
        } else {
            (&self.height_sq, &self.width_sq)
        };
        let r = (a / b).to_f64().unwrap_or(f64::INFINITY);
        r.sqrt()
    }
}

/// Area of the minimum-area enclosing rectangle of `poly`.
pub fn min_area_bounding_rect(poly: &Polygon) -> BigRational {
    min_area_rect(poly.vertices()).area
}

/// Rotating calipers over the strict hull of `points`: one candidate
/// orientation per hull edge, with the extreme points for the other three
/// sides tracked by monotonically advancing indices.
pub fn min_area_rect(points: &[Point]) -> MinRect {
    let hull = convex_hull(points).expect("a simple polygon has a two-dimensional hull");
    let h = hull.vertices();
    let n = h.len();
    let next = |i: usize| (i + 1) % n;

    // (numerator of width*height, |d|^2, width numerator, height numerator)
    let mut best: Option<(BigInt, i128, i128, i128)> = None;
    let mut right = 1 % n;
    let mut far = 1 % n;
    let mut left = 1 % n;
    for i in 0..n {
        let base = h[i];
        let d = h[next(i)] - base;
        let proj = |k: usize| dot(d, h[k] - base);
        let rise = |k: usize| orient(base, h[next(i)], h[k]);

        if i == 0 {
            right = next(0);
        }
        while proj(next(right)) > proj(right) {
            right = next(right);
        }
        if i == 0 {
            far = right;
        }
        while rise(next(far)) > rise(far) {
            far = next(far);
        }
        if i == 0 {
            left = far;
        }
        while proj(next(left)) < proj(left) {
            left = next(left);
        }

        let width = proj(right) - proj(left);
        let height = rise(far);
        let norm = dot(d, d);
        let num = BigInt::from(width) * BigInt::from(height);
        let better = match &best {
            None => true,
            Some((bn, bd, _, _)) => {
                (&num * BigInt::from(*bd)).cmp(&(bn * BigInt::from(norm))) == Ordering::Less
            }
        };
        if better {
            best = Some((num, norm, width, height));
        }
    }

    let (num, norm, width, height) = best.expect("hull has at least three edges");
    let norm_big = BigInt::from(norm);
    MinRect {
        area: BigRational::new(num, norm_big.clone()),
        width_sq: BigRational::new(
            BigInt::from(width) * BigInt::from(width),
            norm_big.clone() * &norm_big,
        ),
        height_sq: BigRational::new(
            BigInt::from(height) * BigInt::from(height),
            norm_big.clone() * &norm_big,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&p| p.into()).collect()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let h = convex_hull(&pts(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)])).unwrap();
        assert_eq!(
            h.vertices(),
            pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]).as_slice()
        );
    }

    #[test]
    fn hull_of_convex_position_is_same_set() {
        let input = pts(&[(3, 1), (0, 2), (1, 0), (2, 3)]);
        let h = convex_hull(&input).unwrap();
        let mut a = h.vertices().to_vec();
        let mut b = input.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(h.twice_area() > 0);
    }

    #[test]
    fn hull_rejects_collinear() {
        assert_eq!(
            convex_hull(&pts(&[(0, 0), (1, 1), (2, 2), (5, 5)])),
            Err(GeomError::AllCollinear)
        );
        assert_eq!(
            convex_hull(&pts(&[(0, 0), (0, 0), (1, 1)])),
            Err(GeomError::AllCollinear)
        );
    }

    #[test]
    fn min_rect_of_rectangles() {
        let r = Polygon::rectangle(0, 0, 3, 2).unwrap();
        assert_eq!(min_area_bounding_rect(&r), int(6));
        let rotated = Polygon::new(pts(&[(0, 0), (3, 3), (1, 5), (-2, 2)])).unwrap();
        assert_eq!(min_area_bounding_rect(&rotated), rotated.area());
        assert_eq!(min_area_bounding_rect(&rotated), int(12));
    }

    #[test]
    fn min_rect_of_triangle() {
        // right triangle: best rectangle is flush with a leg, area 2 * triangle
        let t = Polygon::new(pts(&[(0, 0), (4, 0), (0, 3)])).unwrap();
        assert_eq!(min_area_bounding_rect(&t), int(12));
        let m = min_area_rect(t.vertices());
        assert!(m.aspect_ratio() >= 1.0);
    }
}
