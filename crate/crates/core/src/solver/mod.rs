//! Baseline packing heuristics: priority-ordered bottom-left greedy on a
//! hierarchical integer grid, a shelf packer for rectangles, and local
//! search with insert, relocate, swap and ejection-chain moves.

mod local;
mod packing;

use std::cmp::Ordering as CmpOrdering;
use std::time::{Duration, Instant};

use crate::model::{Instance, Solution};

pub use local::{improve_local, improve_local_traced, LocalSearchResult};
pub use packing::Packing;

/// Item priority for the greedy phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItemOrder {
    /// Value per unit area, highest first.
    ValueDensity,
    ValueDesc,
    AreaDesc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Insert,
    Relocate,
    SwapPair,
    EjectChain,
}

impl Move {
    pub const ALL: [Move; 4] = [
        Move::Insert,
        Move::Relocate,
        Move::SwapPair,
        Move::EjectChain,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlacementMode {
    /// Bottom-left scan on the hierarchical grid.
    Grid,
    /// Next-fit decreasing-height shelves over item bounding boxes.
    Shelf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub ordering: ItemOrder,
    pub grid_levels: usize,
    pub time_budget: Duration,
    pub ls_moves: Vec<Move>,
    pub seed: u64,
    pub ls_max_no_improve: usize,
    /// Hard cap on local-search iterations, independent of the clock.
    pub max_iterations: Option<usize>,
    pub mode: PlacementMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            ordering: ItemOrder::AreaDesc,
            grid_levels: 4,
            time_budget: Duration::from_secs(60),
            ls_moves: Move::ALL.to_vec(),
            seed: 0,
            ls_max_no_improve: 300,
            max_iterations: None,
            mode: PlacementMode::Grid,
        }
    }
}

/// Coarse grid step as a fraction of the item's larger side.
const GREEDY_DIVISOR: i64 = 8;
const SMALL_INSTANCE: usize = 25;
const LARGE_INSTANCE: usize = 5000;
const PERMUTED_PREFIX: usize = 4;

/// Item indices in priority order; ties broken by index.
pub fn priority_order(inst: &Instance, ordering: ItemOrder) -> Vec<usize> {
    let items = inst.items();
    let mut order: Vec<usize> = (0..items.len()).collect();
    let key = |a: usize, b: usize| -> CmpOrdering {
        let (ia, ib) = (&items[a], &items[b]);
        match ordering {
            ItemOrder::ValueDensity => {
                let l = ia.value as i128 * ib.polygon.twice_area();
                let r = ib.value as i128 * ia.polygon.twice_area();
                r.cmp(&l)
                    .then(ib.polygon.twice_area().cmp(&ia.polygon.twice_area()))
            }
            ItemOrder::ValueDesc => ib.value.cmp(&ia.value),
            ItemOrder::AreaDesc => ib.polygon.twice_area().cmp(&ia.polygon.twice_area()),
        }
    };
    order.sort_by(|&a, &b| key(a, b).then(a.cmp(&b)));
    order
}

fn greedy_fill(packing: &mut Packing<'_>, order: &[usize], levels: usize, deadline: Instant) {
    for (k, &i) in order.iter().enumerate() {
        if Instant::now() >= deadline {
            log::info!(
                "greedy stopped by the time budget after {k} of {} items",
                order.len()
            );
            break;
        }
        if packing.is_placed(i) {
            continue;
        }
        if let Some(t) = packing.find_offset(i, GREEDY_DIVISOR, levels) {
            packing.place(i, t);
        }
    }
}

/// Next-fit decreasing height over bounding boxes, rows from the bottom of
/// the container's box. Each placement is still checked exactly.
fn shelf_fill(packing: &mut Packing<'_>, inst: &Instance) {
    let cb = inst.container().bbox();
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by_key(|&i| {
        (
            std::cmp::Reverse(inst.items()[i].polygon.bbox().height()),
            i,
        )
    });
    let (mut x, mut y, mut shelf_h) = (cb.min_x, cb.min_y, 0i64);
    for i in order {
        let b = inst.items()[i].polygon.bbox();
        if x + b.width() > cb.max_x {
            y += shelf_h;
            x = cb.min_x;
            shelf_h = 0;
        }
        if y + b.height() > cb.max_y || x + b.width() > cb.max_x {
            continue;
        }
        let t = crate::geom::Point::new(x - b.min_x, y - b.min_y);
        if packing.fits(i, t) {
            packing.place(i, t);
            x += b.width();
            shelf_h = shelf_h.max(b.height());
        }
    }
}

/// Greedy construction in `cfg.ordering` (or shelves in shelf mode).
pub fn solve_greedy(inst: &Instance, cfg: &SolverConfig) -> Solution {
    let mut packing = Packing::new(inst);
    match cfg.mode {
        PlacementMode::Shelf => shelf_fill(&mut packing, inst),
        PlacementMode::Grid => {
            let order = priority_order(inst, cfg.ordering);
            greedy_fill(
                &mut packing,
                &order,
                cfg.grid_levels,
                Instant::now() + cfg.time_budget,
            );
        }
    }
    packing.to_solution()
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Size-dependent strategy: small instances try every order of the top few
/// items before local search; mid-sized ones get greedy plus full local
/// search; large ones only get insert moves after the greedy phase.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Solution {
    let start = Instant::now();
    let deadline = start + cfg.time_budget;
    let n = inst.len();
    if n == 0 {
        return Solution::empty(inst.name());
    }
    let order = priority_order(inst, cfg.ordering);
    let mut best = Packing::new(inst);
    if cfg.mode == PlacementMode::Shelf {
        shelf_fill(&mut best, inst);
    } else if n <= SMALL_INSTANCE {
        let k = PERMUTED_PREFIX.min(n);
        for prefix in permutations(&order[..k]) {
            let mut p = Packing::new(inst);
            let full: Vec<usize> = prefix.iter().chain(&order[k..]).copied().collect();
            greedy_fill(&mut p, &full, cfg.grid_levels, deadline);
            if p.value() > best.value() {
                best = p;
            }
        }
    } else {
        greedy_fill(&mut best, &order, cfg.grid_levels, deadline);
    }
    log::info!(
        "greedy value {} with {} of {n} items",
        best.value(),
        best.placed_count()
    );

    let mut ls_cfg = cfg.clone();
    ls_cfg.time_budget = deadline.saturating_duration_since(Instant::now());
    if n > LARGE_INSTANCE {
        ls_cfg.ls_moves = vec![Move::Insert];
    }
    if ls_cfg.time_budget.is_zero() || ls_cfg.ls_moves.is_empty() {
        return best.to_solution();
    }
    let start_solution = best.to_solution();
    improve_local(inst, &start_solution, &ls_cfg)
}
