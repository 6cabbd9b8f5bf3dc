//! Polyomino families. Items are Tetris-like templates whose rows and columns
//! get random pixel sizes; some rows slide sideways a little. The sheared
//! variant applies `(x, y) -> (x + m y, y)` before the random flips and
//! quarter turns.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::exact::{big, half, round_div, round_half_up};
use crate::geom::{orient, Point, Polygon};
use crate::model::{Instance, Item, VALUE_SUM_LIMIT};
use crate::streams::{self, coin, uniform_ratio, SHEAR_STREAM_BASE};

use super::config::{POLYOMINO_MAX_CONTAINER_AREA, SHEAR_M_RANGE, VALUE_SCALE_RANGE};
use super::{finish, GenConfig, GenError};

const MAX_SHEAR_RESAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    Line,
    L,
    T,
    Squiggly,
    Y,
    Plus,
    DoubleSquiggly,
}

impl Template {
    pub const ALL: [Template; 7] = [
        Template::Line,
        Template::L,
        Template::T,
        Template::Squiggly,
        Template::Y,
        Template::Plus,
        Template::DoubleSquiggly,
    ];

    /// Occupied `(column, row)` cells.
    pub fn cells(self) -> &'static [(usize, usize)] {
        match self {
            Template::Line => &[(0, 0), (1, 0), (2, 0), (3, 0)],
            Template::L => &[(0, 0), (1, 0), (2, 0), (0, 1)],
            Template::T => &[(0, 0), (1, 0), (2, 0), (1, 1)],
            Template::Squiggly => &[(0, 0), (1, 0), (1, 1), (2, 1)],
            Template::Y => &[(0, 0), (1, 0), (2, 0), (3, 0), (1, 1)],
            Template::Plus => &[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)],
            Template::DoubleSquiggly => &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)],
        }
    }

    /// Rows that may slide sideways without cutting the item apart.
    pub fn shiftable_rows(self) -> &'static [usize] {
        match self {
            Template::Squiggly | Template::Y => &[1],
            Template::Plus => &[0, 2],
            Template::DoubleSquiggly => &[1, 2],
            _ => &[],
        }
    }

    fn dims(self) -> (usize, usize) {
        let cells = self.cells();
        (
            cells.iter().map(|c| c.0).max().unwrap_or(0) + 1,
            cells.iter().map(|c| c.1).max().unwrap_or(0) + 1,
        )
    }
}

/// Value multiplier of a template.
pub fn category_constant(t: Template) -> Rational64 {
    let tenths = match t {
        Template::Line => 10,
        Template::L | Template::T => 11,
        Template::Squiggly => 12,
        Template::Plus | Template::Y => 13,
        Template::DoubleSquiggly => 14,
    };
    Rational64::new(tenths, 10)
}

/// Extra value multiplier of an item sheared with coefficient `m`.
pub fn shear_value_factor(m: Rational64) -> Rational64 {
    Rational64::new(6, 5) * (Rational64::one() + m / 4)
}

/// `round(area * scale * category * shear factor)`, at least 1.
pub fn polyomino_value(
    twice_area: i128,
    scale: Rational64,
    template: Template,
    shear: Option<Rational64>,
) -> u64 {
    let mut v: BigRational = half(twice_area) * big(scale) * big(category_constant(template));
    if let Some(m) = shear {
        v *= big(shear_value_factor(m));
    }
    round_half_up(&v)
        .max(BigInt::one())
        .to_u64()
        .expect("polyomino values are far below 2^64")
}

/// A sampled template before any flip, rotation or shear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub template: Template,
    /// One `[x0, y0, x1, y1]` rectangle per template cell, in the order of
    /// [`Template::cells`].
    pub rects: Vec<[i64; 4]>,
}

impl Shape {
    pub fn outline(&self) -> Polygon {
        let pts = rects_outline(&self.rects).expect("templates stay connected");
        Polygon::new(pts).expect("template outlines are simple")
    }
}

pub fn sample_shape(rng: &mut impl Rng, pixel_size_range: (i64, i64)) -> Shape {
    let template = Template::ALL[rng.gen_range(0..Template::ALL.len())];
    let (cols, rows) = template.dims();
    let (lo, hi) = pixel_size_range;
    let widths: Vec<i64> = (0..cols).map(|_| rng.gen_range(lo..=hi)).collect();
    let heights: Vec<i64> = (0..rows).map(|_| rng.gen_range(lo..=hi)).collect();
    // a row moves by less than a quarter of the narrowest column, so every
    // cell keeps most of its shared edge with its neighbours
    let max_shift = (widths.iter().min().expect("non-empty") - 1) / 4;
    let mut shifts = vec![0i64; rows];
    for &r in template.shiftable_rows() {
        shifts[r] = rng.gen_range(-max_shift..=max_shift);
    }
    let xs = prefix_sums(&widths);
    let ys = prefix_sums(&heights);
    let rects = template
        .cells()
        .iter()
        .map(|&(c, r)| [xs[c] + shifts[r], ys[r], xs[c + 1] + shifts[r], ys[r + 1]])
        .collect();
    Shape { template, rects }
}

fn prefix_sums(v: &[i64]) -> Vec<i64> {
    let mut out = vec![0];
    for x in v {
        out.push(out.last().expect("non-empty") + x);
    }
    out
}

/// Counter-clockwise outline of a union of axis-parallel rectangles, with
/// collinear vertices removed. `None` if the union is not a single region
/// bounded by one simple cycle.
pub fn rects_outline(rects: &[[i64; 4]]) -> Option<Vec<Point>> {
    let mut xs: Vec<i64> = rects.iter().flat_map(|r| [r[0], r[2]]).collect();
    let mut ys: Vec<i64> = rects.iter().flat_map(|r| [r[1], r[3]]).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let (nx, ny) = (xs.len().saturating_sub(1), ys.len().saturating_sub(1));
    let filled = |i: isize, j: isize| -> bool {
        if i < 0 || j < 0 || i as usize >= nx || j as usize >= ny {
            return false;
        }
        let (i, j) = (i as usize, j as usize);
        rects
            .iter()
            .any(|r| r[0] <= xs[i] && xs[i + 1] <= r[2] && r[1] <= ys[j] && ys[j + 1] <= r[3])
    };
    let mut next: HashMap<Point, Point> = HashMap::new();
    let mut add = |a: Point, b: Point| next.insert(a, b).is_none();
    for i in 0..nx {
        for j in 0..ny {
            let (ii, jj) = (i as isize, j as isize);
            if !filled(ii, jj) {
                continue;
            }
            let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[j], ys[j + 1]);
            let ok = (filled(ii, jj - 1) || add(Point::new(x0, y0), Point::new(x1, y0)))
                && (filled(ii + 1, jj) || add(Point::new(x1, y0), Point::new(x1, y1)))
                && (filled(ii, jj + 1) || add(Point::new(x1, y1), Point::new(x0, y1)))
                && (filled(ii - 1, jj) || add(Point::new(x0, y1), Point::new(x0, y0)));
            if !ok {
                return None;
            }
        }
    }
    let start = *next.keys().min()?;
    let mut cycle = vec![start];
    let mut cur = next[&start];
    while cur != start {
        cycle.push(cur);
        cur = *next.get(&cur)?;
    }
    if cycle.len() != next.len() {
        return None;
    }
    let n = cycle.len();
    let out: Vec<Point> = (0..n)
        .filter(|&k| orient(cycle[(k + n - 1) % n], cycle[k], cycle[(k + 1) % n]) != 0)
        .map(|k| cycle[k])
        .collect();
    Some(out)
}

/// Maps every vertex to `(round(x + m y), y)`.
pub fn shear_polygon(poly: &Polygon, m: Rational64) -> Result<Polygon, GenError> {
    let (n, d) = (*m.numer() as i128, *m.denom() as i128);
    let pts = poly
        .vertices()
        .iter()
        .map(|p| {
            let x = round_div(p.x as i128 * d + n * p.y as i128, d);
            i64::try_from(x)
                .map(|x| Point::new(x, p.y))
                .map_err(|_| GenError::NonSimpleAfterRounding)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Polygon::new_normalized(pts).map_err(|_| GenError::NonSimpleAfterRounding)
}

/// Two independent mirror coins, then `k` counter-clockwise quarter turns.
fn flip_and_rotate(rng: &mut impl Rng, poly: &Polygon) -> Polygon {
    let flip_x = rng.gen_bool(0.5);
    let flip_y = rng.gen_bool(0.5);
    let turns = rng.gen_range(0..4);
    let pts = poly
        .vertices()
        .iter()
        .map(|p| {
            let mut q = Point::new(
                if flip_x { -p.x } else { p.x },
                if flip_y { -p.y } else { p.y },
            );
            for _ in 0..turns {
                q = Point::new(-q.y, q.x);
            }
            q
        })
        .collect();
    Polygon::new_normalized(pts)
        .expect("rigid motions keep polygons simple")
        .normalized_to_origin()
        .0
}

fn container_dims(cfg: &GenConfig) -> Result<(i64, i64), GenError> {
    let (w, h) = if cfg.container_width > 0 {
        (cfg.container_width, cfg.container_height)
    } else {
        // a template has 32/7 cells on average, each of expected area mean^2
        let mean = (cfg.pixel_size_range.0 + cfg.pixel_size_range.1) as i128;
        let t = cfg.area_multiple_t;
        let area = cfg.n_target.max(1) as i128 * 32 * mean * mean * *t.denom() as i128
            / (7 * 4 * *t.numer() as i128);
        let h = (area / 2).sqrt().max(cfg.pixel_size_range.1 as i128 * 4);
        (2 * h as i64, h as i64)
    };
    if w as i128 * h as i128 > POLYOMINO_MAX_CONTAINER_AREA {
        return Err(GenError::InvalidConfig(format!(
            "container {w}x{h} exceeds the 2^37 area cap"
        )));
    }
    Ok((w, h))
}

fn gen_polyomino(cfg: &GenConfig, sheared: bool) -> Result<Instance, GenError> {
    cfg.validate()?;
    let (w, h) = container_dims(cfg)?;
    let container = Polygon::rectangle(0, 0, w, h).expect("positive rectangle");
    let t = cfg.area_multiple_t;
    let threshold = container.twice_area() * *t.numer() as i128;
    let mut total_twice: i128 = 0;
    let mut items = Vec::new();
    let mut value_sum: u64 = 0;
    let mut i: u64 = 0;
    while total_twice * (*t.denom() as i128) <= threshold {
        let mut rng = streams::stream(cfg.seed, i);
        let shape = sample_shape(&mut rng, cfg.pixel_size_range);
        let scale = uniform_ratio(&mut rng, VALUE_SCALE_RANGE.0, VALUE_SCALE_RANGE.1);
        let mut poly = shape.outline();
        let mut shear = None;
        if sheared {
            let mut srng = streams::stream(cfg.seed, SHEAR_STREAM_BASE + i);
            if coin(&mut srng, cfg.shear_probability) {
                let (p, m) = (0..MAX_SHEAR_RESAMPLES)
                    .find_map(|_| {
                        let m = uniform_ratio(&mut srng, SHEAR_M_RANGE.0, SHEAR_M_RANGE.1);
                        shear_polygon(&poly, m).ok().map(|p| (p, m))
                    })
                    .ok_or(GenError::GenerationFailed(
                        "shear keeps producing non-simple items",
                    ))?;
                poly = p;
                shear = Some(m);
            }
        }
        let poly = flip_and_rotate(&mut rng, &poly);
        total_twice += poly.twice_area();
        let value = polyomino_value(poly.twice_area(), scale, shape.template, shear);
        value_sum += value;
        if value_sum >= VALUE_SUM_LIMIT {
            return Err(GenError::GenerationFailed("polyomino values exceed 2^40"));
        }
        items.push(Item {
            polygon: poly,
            value,
        });
        i += 1;
    }
    let inst = Instance::new(String::new(), container, items)?;
    finish(inst, if sheared { "satris" } else { "atris" }, cfg, false)
}

pub fn gen_atris(cfg: &GenConfig) -> Result<Instance, GenError> {
    gen_polyomino(cfg, false)
}

pub fn gen_satris(cfg: &GenConfig) -> Result<Instance, GenError> {
    gen_polyomino(cfg, true)
}
