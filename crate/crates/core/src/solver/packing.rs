use num_integer::Integer;

use crate::geom::{contained_in_convex, convex_hull, interiors_overlap, BBox, Point};
use crate::model::{Instance, Placement, Solution};
use crate::verifier::QuadTree;

/// A feasible partial packing with an occupancy index. Every mutation keeps
/// it feasible: items are only placed at offsets checked against the
/// container and all placed neighbours.
#[derive(Debug, Clone)]
pub struct Packing<'a> {
    inst: &'a Instance,
    hulls: Vec<Vec<Point>>,
    offsets: Vec<Option<Point>>,
    tree: QuadTree,
    value: u64,
    placed: usize,
}

impl<'a> Packing<'a> {
    pub fn new(inst: &'a Instance) -> Packing<'a> {
        let hulls = inst
            .items()
            .iter()
            .map(|i| {
                convex_hull(i.polygon.vertices())
                    .expect("items are two-dimensional")
                    .vertices()
                    .to_vec()
            })
            .collect();
        Packing {
            inst,
            hulls,
            offsets: vec![None; inst.len()],
            tree: QuadTree::new(inst.container().bbox()),
            value: 0,
            placed: 0,
        }
    }

    /// Starts from an existing solution, keeping each placement that is
    /// feasible given the ones kept before it.
    pub fn from_solution(inst: &'a Instance, sol: &Solution) -> Packing<'a> {
        let mut p = Packing::new(inst);
        for pl in &sol.placements {
            if pl.item_index < inst.len()
                && p.offsets[pl.item_index].is_none()
                && p.fits(pl.item_index, pl.offset)
            {
                p.place(pl.item_index, pl.offset);
            }
        }
        p
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn placed_count(&self) -> usize {
        self.placed
    }

    pub fn offset(&self, i: usize) -> Option<Point> {
        self.offsets[i]
    }

    pub fn is_placed(&self, i: usize) -> bool {
        self.offsets[i].is_some()
    }

    fn placed_box(&self, i: usize, t: Point) -> BBox {
        self.inst.items()[i].polygon.bbox().translate(t)
    }

    /// Items whose boxes meet `i`'s box at offset `t` with positive area.
    pub fn neighbours(&self, i: usize, t: Point) -> Vec<usize> {
        let b = self.placed_box(i, t);
        let mut out = Vec::new();
        self.tree.for_each_intersecting(&b, |j, jb| {
            if j != i && jb.overlaps_open(&b) {
                out.push(j);
            }
        });
        out.sort_unstable();
        out
    }

    fn collides(&self, i: usize, t: Point) -> bool {
        let items = self.inst.items();
        self.tree
            .any_open_overlap(&self.placed_box(i, t), Some(i), |j| {
                let tj = self.offsets[j].expect("indexed items are placed");
                interiors_overlap(&items[j].polygon, tj, &items[i].polygon, t)
            })
    }

    pub fn fits(&self, i: usize, t: Point) -> bool {
        contained_in_convex(self.inst.container(), &self.inst.items()[i].polygon, t)
            && !self.collides(i, t)
    }

    pub fn place(&mut self, i: usize, t: Point) {
        debug_assert!(self.fits(i, t));
        if self.offsets[i].is_none() {
            self.value += self.inst.items()[i].value;
            self.placed += 1;
        }
        self.offsets[i] = Some(t);
        self.tree.insert(i, self.placed_box(i, t));
    }

    pub fn remove(&mut self, i: usize) -> Option<Point> {
        let t = self.offsets[i].take()?;
        self.tree.remove(i);
        self.value -= self.inst.items()[i].value;
        self.placed -= 1;
        Some(t)
    }

    /// Sets item `i` to `t` (or unplaces it) without a feasibility check; used
    /// to replay or undo changes that were checked when first made.
    pub(crate) fn set(&mut self, i: usize, t: Option<Point>) {
        self.remove(i);
        if let Some(t) = t {
            if self.offsets[i].is_none() {
                self.value += self.inst.items()[i].value;
                self.placed += 1;
            }
            self.offsets[i] = Some(t);
            self.tree.insert(i, self.placed_box(i, t));
        }
    }

    pub fn to_solution(&self) -> Solution {
        let placements = self
            .offsets
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| Placement::new(i, t)))
            .collect();
        Solution::new(self.inst.name(), placements)
    }

    /// Offsets keeping item `i` inside the box of the container.
    fn box_range(&self, i: usize) -> Option<(Point, Point)> {
        let cb = self.inst.container().bbox();
        let ib = self.inst.items()[i].polygon.bbox();
        let lo = Point::new(cb.min_x - ib.min_x, cb.min_y - ib.min_y);
        let hi = Point::new(cb.max_x - ib.max_x, cb.max_y - ib.max_y);
        (lo.x <= hi.x && lo.y <= hi.y).then_some((lo, hi))
    }

    /// Exact interval of `x` offsets keeping item `i` in the (convex)
    /// container when its `y` offset is `ty`.
    fn row_interval(&self, i: usize, ty: i64) -> Option<(i64, i64)> {
        let c = self.inst.container().vertices();
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for k in 0..c.len() {
            let (a, b) = (c[k], c[(k + 1) % c.len()]);
            let (ex, ey) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
            for v in &self.hulls[i] {
                let wx = (v.x - a.x) as i128;
                let wy = (v.y + ty - a.y) as i128;
                // need ex * wy - ey * (wx + tx) >= 0, i.e. ey * tx <= cross
                let cross = ex * wy - ey * wx;
                match ey.signum() {
                    1 => hi = hi.min(Integer::div_floor(&cross, &ey)),
                    -1 => lo = lo.max(Integer::div_ceil(&cross, &ey)),
                    _ if cross < 0 => return None,
                    _ => {}
                }
            }
        }
        (lo <= hi).then_some((lo as i64, hi as i64))
    }

    /// First feasible offset in bottom-left order (lowest `y`, then lowest
    /// `x`) on the grid `anchor + k * step` inside `[lo, hi]`. Each row also
    /// tries the leftmost offset touching the container boundary.
    fn scan(&self, i: usize, lo: Point, hi: Point, anchor: Point, step: i64) -> Option<Point> {
        let first =
            |from: i64, anchor: i64| anchor + Integer::div_ceil(&(from - anchor), &step) * step;
        let mut y = first(lo.y, anchor.y);
        while y <= hi.y {
            if let Some((cl, ch)) = self.row_interval(i, y) {
                let (xl, xh) = (cl.max(lo.x), ch.min(hi.x));
                if xl <= xh {
                    let snug = Point::new(xl, y);
                    if !self.collides(i, snug) {
                        return Some(snug);
                    }
                    let mut x = first(xl, anchor.x);
                    while x <= xh {
                        let t = Point::new(x, y);
                        if !self.collides(i, t) {
                            return Some(t);
                        }
                        x += step;
                    }
                }
            }
            y += step;
        }
        None
    }

    /// Bottom-left placement on a hierarchical grid: a coarse scan with step
    /// `size / divisor`, then `levels - 1` refinements that halve the step
    /// in a window around the best offset found so far.
    pub fn find_offset(&self, i: usize, divisor: i64, levels: usize) -> Option<Point> {
        let (lo, hi) = self.box_range(i)?;
        let ib = self.inst.items()[i].polygon.bbox();
        let mut step = (ib.width().max(ib.height()) / divisor.max(1)).max(1);
        let mut best = self.scan(i, lo, hi, lo, step)?;
        for _ in 1..levels.max(1) {
            if step == 1 {
                break;
            }
            let wlo = Point::new((best.x - step).max(lo.x), (best.y - step).max(lo.y));
            let whi = Point::new((best.x + step).min(hi.x), best.y);
            step = (step / 2).max(1);
            if let Some(t) = self.scan(i, wlo, whi, wlo, step) {
                if (t.y, t.x) < (best.y, best.x) {
                    best = t;
                }
            }
        }
        debug_assert!(self.fits(i, best));
        Some(best)
    }
}
