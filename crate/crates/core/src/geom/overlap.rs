use super::point::{orient, Point};
use super::polygon::{locate_wide, orient_wide, Location, Polygon};

/// Whether the open interiors of `a + ta` and `b + tb` intersect.
///
/// Boundary contact (shared edges or vertices) is not overlap. The test is
/// exact: a transversal edge crossing settles it immediately; otherwise each
/// boundary is split at the other polygon's vertices lying on it and the
/// midpoint of every piece is located against the other polygon.
pub fn interiors_overlap(a: &Polygon, ta: Point, b: &Polygon, tb: Point) -> bool {
    let box_a = a.bbox().translate(ta);
    let box_b = b.bbox().translate(tb);
    if !box_a.overlaps_open(&box_b) {
        return false;
    }
    // Doubled coordinates so that segment midpoints stay integral.
    let pa = doubled(a, ta);
    let pb = doubled(b, tb);
    if any_proper_crossing(&pa, &pb) {
        return true;
    }
    boundary_enters(&pa, &pb) || boundary_enters(&pb, &pa)
}

fn doubled(p: &Polygon, t: Point) -> Vec<[i128; 2]> {
    p.vertices()
        .iter()
        .map(|v| {
            [
                2 * (v.x as i128 + t.x as i128),
                2 * (v.y as i128 + t.y as i128),
            ]
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Extent {
    min: [i128; 2],
    max: [i128; 2],
}

impl Extent {
    fn of(points: &[[i128; 2]]) -> Extent {
        let mut e = Extent {
            min: [i128::MAX; 2],
            max: [i128::MIN; 2],
        };
        for p in points {
            for (k, &v) in p.iter().enumerate() {
                e.min[k] = e.min[k].min(v);
                e.max[k] = e.max[k].max(v);
            }
        }
        e
    }

    fn segment(u: [i128; 2], w: [i128; 2]) -> Extent {
        Extent {
            min: [u[0].min(w[0]), u[1].min(w[1])],
            max: [u[0].max(w[0]), u[1].max(w[1])],
        }
    }

    fn touches(&self, o: &Extent) -> bool {
        (0..2).all(|k| self.min[k] <= o.max[k] && o.min[k] <= self.max[k])
    }
}

fn any_proper_crossing(pa: &[[i128; 2]], pb: &[[i128; 2]]) -> bool {
    let eb = Extent::of(pb);
    let na = pa.len();
    let nb = pb.len();
    let b_edges: Vec<Extent> = (0..nb)
        .map(|j| Extent::segment(pb[j], pb[(j + 1) % nb]))
        .collect();
    for i in 0..na {
        let (a1, a2) = (pa[i], pa[(i + 1) % na]);
        let ea = Extent::segment(a1, a2);
        if !ea.touches(&eb) {
            continue;
        }
        for j in 0..nb {
            if !ea.touches(&b_edges[j]) {
                continue;
            }
            let (b1, b2) = (pb[j], pb[(j + 1) % nb]);
            let d1 = orient_wide(a1, a2, b1).signum();
            let d2 = orient_wide(a1, a2, b2).signum();
            if d1 * d2 >= 0 {
                continue;
            }
            let d3 = orient_wide(b1, b2, a1).signum();
            let d4 = orient_wide(b1, b2, a2).signum();
            if d3 * d4 < 0 {
                return true;
            }
        }
    }
    false
}

#[inline]
fn dot_wide(a: [i128; 2], b: [i128; 2]) -> i128 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
fn sub_wide(a: [i128; 2], b: [i128; 2]) -> [i128; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Assuming no transversal crossings: does some piece of `p`'s boundary run
/// through the interior of `q`, or along `q`'s boundary with both interiors
/// on the same side?
fn boundary_enters(p: &[[i128; 2]], q: &[[i128; 2]]) -> bool {
    let eq = Extent::of(q);
    let np = p.len();
    let nq = q.len();
    let mut splits: Vec<(i128, [i128; 2])> = Vec::new();
    for i in 0..np {
        let (s, e) = (p[i], p[(i + 1) % np]);
        if !Extent::segment(s, e).touches(&eq) {
            continue;
        }
        let dir = sub_wide(e, s);
        let len = dot_wide(dir, dir);
        splits.clear();
        for &v in q {
            if orient_wide(s, e, v) != 0 {
                continue;
            }
            let t = dot_wide(sub_wide(v, s), dir);
            if t > 0 && t < len {
                splits.push((t, v));
            }
        }
        splits.sort_unstable_by_key(|&(t, _)| t);
        let mut prev = s;
        for &next in splits.iter().map(|(_, v)| v).chain(std::iter::once(&e)) {
            let mid = [(prev[0] + next[0]) / 2, (prev[1] + next[1]) / 2];
            match locate_wide(q, mid) {
                Location::Inside => return true,
                Location::Outside => {}
                Location::Boundary => {
                    for j in 0..nq {
                        let (u, w) = (q[j], q[(j + 1) % nq]);
                        if orient_wide(u, w, mid) == 0
                            && Extent::segment(u, w).touches(&Extent::segment(mid, mid))
                        {
                            if dot_wide(dir, sub_wide(w, u)) > 0 {
                                return true;
                            }
                            break;
                        }
                    }
                }
            }
            prev = next;
        }
    }
    false
}

/// Whether `item + t` lies inside or on the boundary of the convex `container`.
/// Checking vertices suffices because the container is convex.
pub fn contained_in_convex(container: &Polygon, item: &Polygon, t: Point) -> bool {
    if !container.bbox().contains_box(&item.bbox().translate(t)) {
        return false;
    }
    let c = container.vertices();
    let n = c.len();
    item.vertices().iter().all(|&v| {
        let p = v + t;
        (0..n).all(|i| orient(c[i], c[(i + 1) % n], p) >= 0)
    })
}
