#![allow(dead_code)]

use polypack::geom::{Point, Polygon};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Star-shaped polygon around `center`: sorted random angles, random radii.
/// Rounding can still produce a non-simple chain; callers filter.
pub fn star_points(
    r: &mut impl Rng,
    center: (i64, i64),
    k: usize,
    rmin: f64,
    rmax: f64,
) -> Vec<Point> {
    let mut angles: Vec<f64> = (0..k)
        .map(|_| r.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles
        .into_iter()
        .map(|a| {
            let rad = r.gen_range(rmin..rmax);
            Point::new(
                center.0 + (rad * a.cos()).round() as i64,
                center.1 + (rad * a.sin()).round() as i64,
            )
        })
        .collect()
}

pub fn random_simple_polygon(
    r: &mut impl Rng,
    center: (i64, i64),
    k: usize,
    rmin: f64,
    rmax: f64,
) -> Polygon {
    loop {
        if let Ok(p) = Polygon::new(star_points(r, center, k, rmin, rmax)) {
            return p;
        }
    }
}

pub fn random_convex_polygon(r: &mut impl Rng, span: i64, k: usize) -> Polygon {
    loop {
        let pts: Vec<Point> = (0..k)
            .map(|_| Point::new(r.gen_range(-span..=span), r.gen_range(-span..=span)))
            .collect();
        if let Ok(h) = polypack::geom::convex_hull(&pts) {
            return h;
        }
    }
}

/// Naive all-pairs simplicity check written independently of the library.
pub fn brute_is_simple(v: &[Point]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if v[i] == v[j] {
                return false;
            }
        }
    }
    let cross = |o: Point, a: Point, b: Point| -> i128 {
        (a.x - o.x) as i128 * (b.y - o.y) as i128 - (a.y - o.y) as i128 * (b.x - o.x) as i128
    };
    let between = |a: Point, b: Point, p: Point| {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    let hits = |a: Point, b: Point, c: Point, d: Point| -> bool {
        let o1 = cross(a, b, c).signum();
        let o2 = cross(a, b, d).signum();
        let o3 = cross(c, d, a).signum();
        let o4 = cross(c, d, b).signum();
        if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
            return true;
        }
        (o1 == 0 && between(a, b, c))
            || (o2 == 0 && between(a, b, d))
            || (o3 == 0 && between(c, d, a))
            || (o4 == 0 && between(c, d, b))
    };
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in 0..n {
            if j == i {
                continue;
            }
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == (i + 1) % n || i == (j + 1) % n;
            if adjacent {
                // shared endpoint is b (j follows i) or a (i follows j); any other common point is a fold
                let shared = if j == (i + 1) % n { b } else { a };
                let other_mine = if shared == b { a } else { b };
                let other_theirs = if c == shared { d } else { c };
                if cross(shared, other_mine, other_theirs) == 0 {
                    let dx1 = (other_mine.x - shared.x) as i128;
                    let dy1 = (other_mine.y - shared.y) as i128;
                    let dx2 = (other_theirs.x - shared.x) as i128;
                    let dy2 = (other_theirs.y - shared.y) as i128;
                    if dx1 * dx2 + dy1 * dy2 > 0 {
                        return false;
                    }
                }
            } else if hits(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Verdict of the naive verifier: all pairs, no spatial index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Brute {
    Valid(u64),
    Invalid,
}

pub fn brute_verify(inst: &polypack::model::Instance, sol: &polypack::model::Solution) -> Brute {
    let n = inst.len();
    let mut seen = std::collections::HashSet::new();
    for p in &sol.placements {
        if p.item_index >= n || !seen.insert(p.item_index) {
            return Brute::Invalid;
        }
    }
    let c = inst.container().vertices();
    for p in &sol.placements {
        for v in inst.items()[p.item_index].polygon.vertices() {
            let q = Point::new(v.x + p.offset.x, v.y + p.offset.y);
            for k in 0..c.len() {
                let (a, b) = (c[k], c[(k + 1) % c.len()]);
                let cross = (b.x - a.x) as i128 * (q.y - a.y) as i128
                    - (b.y - a.y) as i128 * (q.x - a.x) as i128;
                if cross < 0 {
                    return Brute::Invalid;
                }
            }
        }
    }
    let ps = &sol.placements;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let (a, b) = (&ps[i], &ps[j]);
            if polypack::geom::interiors_overlap(
                &inst.items()[a.item_index].polygon,
                a.offset,
                &inst.items()[b.item_index].polygon,
                b.offset,
            ) {
                return Brute::Invalid;
            }
        }
    }
    Brute::Valid(ps.iter().map(|p| inst.items()[p.item_index].value).sum())
}

pub fn verdict(report: &polypack::verifier::VerifyReport) -> Brute {
    if report.valid {
        Brute::Valid(report.packed_value)
    } else {
        Brute::Invalid
    }
}

/// Random solution over `inst` in one of several styles: sparse random
/// offsets, greedy touching layouts, nudged layouts and index errors.
pub fn random_solution(
    r: &mut impl Rng,
    inst: &polypack::model::Instance,
) -> polypack::model::Solution {
    use polypack::model::{Placement, Solution};
    let n = inst.len();
    let cb = inst.container().bbox();
    let random_offset = |r: &mut dyn rand::RngCore, i: usize| {
        let b = inst.items()[i].polygon.bbox();
        let x = r.gen_range(
            cb.min_x - b.width() / 4..=(cb.max_x - b.width() + b.width() / 4).max(cb.min_x),
        );
        let y = r.gen_range(
            cb.min_y - b.height() / 4..=(cb.max_y - b.height() + b.height() / 4).max(cb.min_y),
        );
        Point::new(x - b.min_x, y - b.min_y)
    };
    let style = r.gen_range(0..5);
    let k = r.gen_range(0..=n.min(12));
    let mut idx: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), r);
    let mut placements: Vec<Placement> = Vec::new();
    match style {
        0 => {
            for &i in idx.iter().take(k) {
                placements.push(Placement::new(i, random_offset(r, i)));
            }
        }
        _ => {
            // build a valid layout where items touch their predecessor's box
            for &i in idx.iter().take(3 * k + 3) {
                let b = inst.items()[i].polygon.bbox();
                let t = match placements.last() {
                    Some(prev) if r.gen_bool(0.7) => {
                        let pb = inst.items()[prev.item_index]
                            .polygon
                            .bbox()
                            .translate(prev.offset);
                        match r.gen_range(0..3) {
                            0 => Point::new(pb.max_x - b.min_x, pb.min_y - b.min_y),
                            1 => Point::new(pb.min_x - b.min_x, pb.max_y - b.min_y),
                            _ => Point::new(pb.max_x - b.min_x, pb.max_y - b.min_y),
                        }
                    }
                    _ => random_offset(r, i),
                };
                placements.push(Placement::new(i, t));
                if brute_verify(inst, &Solution::new(inst.name(), placements.clone()))
                    == Brute::Invalid
                {
                    placements.pop();
                }
            }
            if style == 2 && !placements.is_empty() {
                let j = r.gen_range(0..placements.len());
                let d = [(-1, 0), (1, 0), (0, -1), (0, 1)][r.gen_range(0..4)];
                placements[j].offset =
                    Point::new(placements[j].offset.x + d.0, placements[j].offset.y + d.1);
            }
            if style == 3 && !placements.is_empty() {
                let j = r.gen_range(0..placements.len());
                let copy = placements[j];
                placements.push(Placement::new(
                    copy.item_index,
                    random_offset(r, copy.item_index),
                ));
            }
            if style == 4 && r.gen_bool(0.3) {
                placements.push(Placement::new(n + r.gen_range(0..3), Point::ORIGIN));
            }
        }
    }
    Solution::new(inst.name(), placements)
}
