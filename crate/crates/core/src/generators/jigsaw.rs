//! Jigsaw family: cut a rectangle by random lines, merge neighbouring faces
//! into larger pieces, optionally nudge the pieces, and repeat for several
//! copies.
//!
//! The arrangement is computed exactly: every vertex is the intersection of
//! two input lines, kept in normalized homogeneous integer coordinates, so a
//! vertex shared by several faces is the same value in all of them. Vertices
//! are rounded to the grid only at the end, which keeps neighbouring pieces
//! consistent and the unperturbed pieces an exact tiling.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::round_div;
use crate::geom::{min_area_rect, Point, Polygon};
use crate::model::{Instance, Item, Placement, Solution};
use crate::streams::{self, INSTANCE_STREAM, JIGSAW_STREAM_BASE};

use super::config::JIGSAW_MAX_SIDE;
use super::{finish, GenConfig, GenError};

const DEFAULT_SIDE: i64 = 10_000;
const MAX_ATTEMPTS: usize = 50;
const MAX_PERTURB_TRIES: usize = 10;
/// Pieces below this share of the container area (in thousandths) are merged away.
const MIN_PIECE_PERMILLE: i128 = 2;
/// Pieces above this share of the container area (in thousandths) are not formed.
const MAX_PIECE_PERMILLE: i128 = 250;
const MAX_ASPECT: f64 = 25.0;
/// Share of faces that random merging tries to absorb, in percent.
const MERGE_PERCENT: usize = 40;

/// A jigsaw instance together with the placement that reassembles the first
/// copy in the container.
#[derive(Debug, Clone)]
pub struct JigsawOutput {
    pub instance: Instance,
    pub layout: Solution,
}

pub fn gen_jigsaw(cfg: &GenConfig) -> Result<Instance, GenError> {
    gen_jigsaw_with_layout(cfg).map(|o| o.instance)
}

pub fn gen_jigsaw_with_layout(cfg: &GenConfig) -> Result<JigsawOutput, GenError> {
    cfg.validate()?;
    let (w, h) = if cfg.container_width == 0 {
        (DEFAULT_SIDE, DEFAULT_SIDE)
    } else {
        (cfg.container_width, cfg.container_height)
    };
    if w < 8 || h < 8 || w > JIGSAW_MAX_SIDE || h > JIGSAW_MAX_SIDE {
        return Err(GenError::InvalidConfig(format!(
            "jigsaw container sides must lie in [8, 2^20], got {w}x{h}"
        )));
    }
    let container = Polygon::rectangle(0, 0, w, h).expect("positive rectangle");

    // (polygon in container coordinates, copy index)
    let mut pieces: Vec<(Polygon, usize)> = Vec::new();
    for copy in 0..cfg.jigsaw_copies {
        let mut rng = streams::stream(cfg.seed, JIGSAW_STREAM_BASE + copy as u64);
        let cut = (0..MAX_ATTEMPTS)
            .find_map(|_| cut_rectangle(&mut rng, w, h, cfg.jigsaw_line_count))
            .ok_or(GenError::GenerationFailed("jigsaw arrangement"))?;
        for piece in cut {
            let piece = if cfg.jigsaw_perturb {
                perturb(&mut rng, piece)
            } else {
                piece
            };
            pieces.push((piece, copy));
        }
    }

    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.shuffle(&mut streams::stream(cfg.seed, INSTANCE_STREAM));

    let mut items = Vec::with_capacity(pieces.len());
    let mut layout = Vec::new();
    for (index, &k) in order.iter().enumerate() {
        let (poly, copy) = &pieces[k];
        let (normalized, shift) = poly.normalized_to_origin();
        if *copy == 0 {
            layout.push(Placement::new(index, shift));
        }
        items.push(Item {
            polygon: normalized,
            value: 1,
        });
    }
    let inst = Instance::new(String::new(), container, items)?;
    let instance = finish(inst, "jigsaw", cfg, true)?;
    let layout = Solution::new(instance.name(), layout);
    Ok(JigsawOutput { instance, layout })
}

/// Point `(x/d, y/d)` with `d > 0` and `gcd(x, y, d) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct HPoint {
    x: i128,
    y: i128,
    d: i128,
}

impl HPoint {
    fn new(x: i128, y: i128, d: i128) -> HPoint {
        let s = if d < 0 { -1 } else { 1 };
        let g = x.gcd(&y).gcd(&d);
        HPoint {
            x: s * x / g,
            y: s * y / g,
            d: s * d / g,
        }
    }

    fn rounded(&self) -> Point {
        Point::new(
            round_div(self.x, self.d) as i64,
            round_div(self.y, self.d) as i64,
        )
    }
}

/// `a x + b y + c = 0`
#[derive(Debug, Clone, Copy)]
struct Line {
    a: i128,
    b: i128,
    c: i128,
}

impl Line {
    fn through(p: Point, q: Point) -> Line {
        let a = (q.y - p.y) as i128;
        let b = (p.x - q.x) as i128;
        Line {
            a,
            b,
            c: -(a * p.x as i128 + b * p.y as i128),
        }
    }

    fn side(&self, p: &HPoint) -> i128 {
        (self.a * p.x + self.b * p.y + self.c * p.d).signum()
    }

    fn meet(&self, o: &Line) -> HPoint {
        let d = self.a * o.b - o.a * self.b;
        debug_assert!(d != 0, "parallel lines do not cross inside a face");
        HPoint::new(self.b * o.c - o.b * self.c, self.c * o.a - o.c * self.a, d)
    }

    fn same_as(&self, o: &Line) -> bool {
        self.a * o.b == o.a * self.b && self.a * o.c == o.a * self.c && self.b * o.c == o.b * self.c
    }
}

/// Convex face; `lines[i]` supports the edge from `verts[i]` to `verts[i + 1]`.
#[derive(Debug, Clone)]
struct Face {
    verts: Vec<HPoint>,
    lines: Vec<usize>,
}

fn split(face: &Face, lines: &[Line], cut: usize) -> Option<(Face, Face)> {
    let line = &lines[cut];
    let sides: Vec<i128> = face.verts.iter().map(|v| line.side(v)).collect();
    if !sides.iter().any(|&s| s > 0) || !sides.iter().any(|&s| s < 0) {
        return None;
    }
    let n = face.verts.len();
    let mut pos = Face {
        verts: Vec::new(),
        lines: Vec::new(),
    };
    let mut neg = pos.clone();
    for i in 0..n {
        let j = (i + 1) % n;
        let (si, sj) = (sides[i], sides[j]);
        let edge = face.lines[i];
        let v = face.verts[i];
        if si >= 0 {
            pos.verts.push(v);
            pos.lines.push(if si > 0 || sj > 0 { edge } else { cut });
        }
        if si <= 0 {
            neg.verts.push(v);
            neg.lines.push(if si < 0 || sj < 0 { edge } else { cut });
        }
        if si * sj < 0 {
            let p = lines[edge].meet(line);
            pos.verts.push(p);
            pos.lines.push(if sj > 0 { edge } else { cut });
            neg.verts.push(p);
            neg.lines.push(if sj < 0 { edge } else { cut });
        }
    }
    Some((pos, neg))
}

fn boundary_point(rng: &mut impl Rng, side: u8, w: i64, h: i64) -> Point {
    match side {
        0 => Point::new(rng.gen_range(1..w), 0),
        1 => Point::new(w, rng.gen_range(1..h)),
        2 => Point::new(rng.gen_range(1..w), h),
        _ => Point::new(0, rng.gen_range(1..h)),
    }
}

fn arrangement(rng: &mut impl Rng, w: i64, h: i64, line_count: usize) -> Vec<Face> {
    let corners = [
        Point::new(0, 0),
        Point::new(w, 0),
        Point::new(w, h),
        Point::new(0, h),
    ];
    let mut lines: Vec<Line> = (0..4)
        .map(|i| Line::through(corners[i], corners[(i + 1) % 4]))
        .collect();
    let mut faces = vec![Face {
        verts: corners
            .iter()
            .map(|p| HPoint::new(p.x as i128, p.y as i128, 1))
            .collect(),
        lines: vec![0, 1, 2, 3],
    }];
    while lines.len() < 4 + line_count {
        let s1 = rng.gen_range(0..4u8);
        let s2 = (s1 + rng.gen_range(1..4u8)) % 4;
        let line = Line::through(boundary_point(rng, s1, w, h), boundary_point(rng, s2, w, h));
        if lines.iter().any(|l| l.same_as(&line)) {
            continue;
        }
        lines.push(line);
        let cut = lines.len() - 1;
        faces = faces
            .into_iter()
            .flat_map(|f| match split(&f, &lines, cut) {
                Some((a, b)) => vec![a, b],
                None => vec![f],
            })
            .collect();
    }
    faces
}

struct Piece {
    faces: Vec<usize>,
    boundary: Vec<usize>,
    polygon: Option<Polygon>,
}

/// Outer boundary of a union of faces, if it is a single cycle without
/// repeated vertices.
fn union_boundary(face_verts: &[Vec<usize>], faces: &[usize]) -> Option<Vec<usize>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    for &f in faces {
        let v = &face_verts[f];
        for i in 0..v.len() {
            edges.insert((v[i], v[(i + 1) % v.len()]));
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(u, v) in &edges {
        if edges.contains(&(v, u)) {
            continue;
        }
        if next.insert(u, v).is_some() {
            return None;
        }
    }
    let start = *next.keys().min()?;
    let mut cycle = vec![start];
    let mut cur = next[&start];
    while cur != start {
        cycle.push(cur);
        cur = *next.get(&cur)?;
        if cycle.len() > next.len() {
            return None;
        }
    }
    (cycle.len() == next.len()).then_some(cycle)
}

struct Cutter<'a> {
    face_verts: Vec<Vec<usize>>,
    points: Vec<Point>,
    container_twice: i128,
    rng: &'a mut dyn rand::RngCore,
}

impl Cutter<'_> {
    fn polygon(&self, boundary: &[usize]) -> Option<Polygon> {
        Polygon::new(boundary.iter().map(|&v| self.points[v]).collect()).ok()
    }

    fn too_small(&self, p: &Piece) -> bool {
        match &p.polygon {
            None => true,
            Some(poly) => poly.twice_area() * 1000 < MIN_PIECE_PERMILLE * self.container_twice,
        }
    }

    fn acceptable(&self, poly: &Polygon, check_shape: bool) -> bool {
        if poly.twice_area() * 1000 > MAX_PIECE_PERMILLE * self.container_twice {
            return false;
        }
        !check_shape || min_area_rect(poly.vertices()).aspect_ratio() <= MAX_ASPECT
    }

    fn try_merge(&self, a: &Piece, b: &Piece, check_shape: bool) -> Option<Piece> {
        let faces: Vec<usize> = a.faces.iter().chain(&b.faces).copied().collect();
        let boundary = union_boundary(&self.face_verts, &faces)?;
        let polygon = self.polygon(&boundary)?;
        if !self.acceptable(&polygon, check_shape) {
            return None;
        }
        Some(Piece {
            faces,
            boundary,
            polygon: Some(polygon),
        })
    }
}

fn neighbours(
    pieces: &[Option<Piece>],
    owner: &HashMap<(usize, usize), usize>,
    p: usize,
) -> Vec<(usize, usize)> {
    let mut shared: HashMap<usize, usize> = HashMap::new();
    let b = &pieces[p].as_ref().expect("alive").boundary;
    for i in 0..b.len() {
        if let Some(&q) = owner.get(&(b[(i + 1) % b.len()], b[i])) {
            if q != p {
                *shared.entry(q).or_default() += 1;
            }
        }
    }
    let mut out: Vec<(usize, usize)> = shared.into_iter().collect();
    out.sort_unstable_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    out
}

fn register(owner: &mut HashMap<(usize, usize), usize>, piece: &Piece, id: usize) {
    let b = &piece.boundary;
    for i in 0..b.len() {
        owner.insert((b[i], b[(i + 1) % b.len()]), id);
    }
}

/// One attempt at cutting the rectangle; `None` if rounding or merging left
/// an unusable piece.
fn cut_rectangle(rng: &mut impl Rng, w: i64, h: i64, line_count: usize) -> Option<Vec<Polygon>> {
    let faces = arrangement(rng, w, h, line_count);

    let mut ids: HashMap<HPoint, usize> = HashMap::new();
    let mut points = Vec::new();
    let face_verts: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| {
            f.verts
                .iter()
                .map(|v| {
                    *ids.entry(*v).or_insert_with(|| {
                        points.push(v.rounded());
                        points.len() - 1
                    })
                })
                .collect()
        })
        .collect();

    let cutter = Cutter {
        face_verts,
        points,
        container_twice: 2 * w as i128 * h as i128,
        rng,
    };
    let mut pieces: Vec<Option<Piece>> = (0..faces.len())
        .map(|f| {
            let boundary = cutter.face_verts[f].clone();
            let polygon = cutter.polygon(&boundary);
            Some(Piece {
                faces: vec![f],
                boundary,
                polygon,
            })
        })
        .collect();
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (id, p) in pieces.iter().enumerate() {
        register(&mut owner, p.as_ref().expect("alive"), id);
    }

    let merge = |pieces: &mut Vec<Option<Piece>>,
                 owner: &mut HashMap<(usize, usize), usize>,
                 a: usize,
                 b: usize,
                 m: Piece| {
        pieces[a] = None;
        pieces[b] = None;
        pieces.push(Some(m));
        let id = pieces.len() - 1;
        register(owner, pieces[id].as_ref().expect("just pushed"), id);
    };

    // random merges of neighbouring pieces
    let wanted = faces.len() * MERGE_PERCENT / 100;
    let mut merged = 0;
    for _ in 0..4 * faces.len() {
        if merged >= wanted {
            break;
        }
        let alive: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].is_some()).collect();
        let p = alive[cutter.rng.gen_range(0..alive.len())];
        let nb = neighbours(&pieces, &owner, p);
        if nb.is_empty() {
            continue;
        }
        let q = nb[cutter.rng.gen_range(0..nb.len())].0;
        if let Some(m) = cutter.try_merge(pieces[p].as_ref()?, pieces[q].as_ref()?, true) {
            merge(&mut pieces, &mut owner, p, q, m);
            merged += 1;
        }
    }

    // absorb pieces that are too small or collapsed under rounding
    while let Some(p) =
        (0..pieces.len()).find(|&i| pieces[i].as_ref().is_some_and(|x| cutter.too_small(x)))
    {
        let nb = neighbours(&pieces, &owner, p);
        let found = nb.iter().find_map(|&(q, _)| {
            cutter
                .try_merge(
                    pieces[p].as_ref().expect("alive"),
                    pieces[q].as_ref().expect("alive"),
                    false,
                )
                .map(|m| (q, m))
        });
        let (q, m) = found?;
        merge(&mut pieces, &mut owner, p, q, m);
    }

    let out: Vec<Polygon> = pieces
        .into_iter()
        .flatten()
        .map(|p| p.polygon.expect("validated"))
        .collect();
    debug_assert_eq!(
        out.iter().map(|p| p.twice_area()).sum::<i128>(),
        cutter.container_twice
    );
    Some(out)
}

fn perturb(rng: &mut impl Rng, piece: Polygon) -> Polygon {
    for _ in 0..MAX_PERTURB_TRIES {
        let moved: Vec<Point> = piece
            .vertices()
            .iter()
            .map(|p| Point::new(p.x + rng.gen_range(-1..=1), p.y + rng.gen_range(-1..=1)))
            .collect();
        if let Ok(p) = Polygon::new(moved) {
            return p;
        }
    }
    piece
}
