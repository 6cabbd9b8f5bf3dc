use std::collections::hash_map::DefaultHasher;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rand::Rng;

use crate::geom::Point;
use crate::model::{Instance, Solution};
use crate::streams;

use super::packing::Packing;
use super::{priority_order, Move, SolverConfig};

/// Grid step of local-search placements, as a fraction of the item size.
const LS_DIVISOR: i64 = 16;
/// Moves sampled per iteration; the best improving one is applied.
const SAMPLES: usize = 4;
const MEMORY_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct LocalSearchResult {
    pub solution: Solution,
    /// Packed value after every iteration, starting with the initial value.
    pub trace: Vec<u64>,
    pub iterations: usize,
    pub improvements: usize,
}

/// Bounded FIFO set of move attempts known to fail in the current state.
struct Memory {
    set: HashSet<u64>,
    queue: VecDeque<u64>,
    cap: usize,
}

impl Memory {
    fn new(cap: usize) -> Memory {
        Memory {
            set: HashSet::new(),
            queue: VecDeque::new(),
            cap,
        }
    }

    fn contains(&self, key: u64) -> bool {
        self.set.contains(&key)
    }

    fn insert(&mut self, key: u64) {
        if self.set.insert(key) {
            self.queue.push_back(key);
            if self.queue.len() > self.cap {
                let old = self.queue.pop_front().expect("non-empty");
                self.set.remove(&old);
            }
        }
    }
}

/// Records the first prior state of each touched item so a tentative move
/// can be undone.
struct Journal<'p, 'a> {
    packing: &'p mut Packing<'a>,
    undo: Vec<(usize, Option<Point>)>,
    divisor: i64,
    levels: usize,
}

impl<'p, 'a> Journal<'p, 'a> {
    fn touch(&mut self, i: usize) {
        if !self.undo.iter().any(|u| u.0 == i) {
            self.undo.push((i, self.packing.offset(i)));
        }
    }

    fn remove(&mut self, i: usize) {
        self.touch(i);
        self.packing.remove(i);
    }

    fn insert(&mut self, i: usize) -> bool {
        match self.packing.find_offset(i, self.divisor, self.levels) {
            Some(t) => {
                self.touch(i);
                self.packing.place(i, t);
                true
            }
            None => false,
        }
    }

    /// Final state of every touched item, then the packing is rolled back.
    fn finish(self) -> Vec<(usize, Option<Point>)> {
        let changes = self
            .undo
            .iter()
            .map(|&(i, _)| (i, self.packing.offset(i)))
            .collect();
        for &(i, old) in self.undo.iter().rev() {
            self.packing.set(i, old);
        }
        changes
    }
}

#[derive(Debug, Clone, Copy, Hash)]
enum Candidate {
    Insert(usize),
    Relocate {
        add: usize,
        moved: usize,
    },
    SwapPair {
        out: usize,
        add: usize,
        extra: Option<usize>,
    },
    EjectChain {
        add: usize,
        first: usize,
        second: usize,
    },
}

/// Prior offsets of the items a move touched.
type Changes = Vec<(usize, Option<Point>)>;

fn evaluate(packing: &mut Packing<'_>, cand: Candidate, levels: usize) -> Option<(u64, Changes)> {
    let before = packing.value();
    let mut j = Journal {
        packing,
        undo: Vec::new(),
        divisor: LS_DIVISOR,
        levels,
    };
    let ok = match cand {
        Candidate::Insert(i) => j.insert(i),
        Candidate::Relocate { add, moved } => {
            j.remove(moved);
            j.insert(add) && j.insert(moved)
        }
        Candidate::SwapPair { out, add, extra } => {
            j.remove(out);
            let ok = j.insert(add);
            if ok {
                if let Some(e) = extra {
                    j.insert(e);
                }
                j.insert(out);
            }
            ok
        }
        Candidate::EjectChain { add, first, second } => {
            j.remove(first);
            j.remove(second);
            let ok = j.insert(add);
            if ok {
                j.insert(first);
                j.insert(second);
            }
            ok
        }
    };
    let after = j.packing.value();
    let changes = j.finish();
    (ok && after > before).then(|| (after - before, changes))
}

fn key(cand: &Candidate, packing: &Packing<'_>) -> u64 {
    let mut h = DefaultHasher::new();
    cand.hash(&mut h);
    packing.value().hash(&mut h);
    packing.placed_count().hash(&mut h);
    h.finish()
}

pub fn improve_local(inst: &Instance, start: &Solution, cfg: &SolverConfig) -> Solution {
    improve_local_traced(inst, start, cfg).solution
}

/// Sampled best-improvement local search. The packed value never decreases:
/// only moves with positive gain are applied, and every intermediate state is
/// feasible. Stops on the time budget, the iteration cap, or after
/// `ls_max_no_improve` iterations without improvement.
pub fn improve_local_traced(
    inst: &Instance,
    start: &Solution,
    cfg: &SolverConfig,
) -> LocalSearchResult {
    let deadline = Instant::now() + cfg.time_budget;
    let mut packing = Packing::from_solution(inst, start);
    let order = priority_order(inst, cfg.ordering);
    let mut rng = streams::stream(cfg.seed, 0);
    let mut memory = Memory::new(MEMORY_CAP);
    let mut trace = vec![packing.value()];
    let (mut iterations, mut improvements, mut idle) = (0, 0, 0);

    while !cfg.ls_moves.is_empty()
        && idle < cfg.ls_max_no_improve
        && cfg.max_iterations.is_none_or(|m| iterations < m)
        && Instant::now() < deadline
    {
        let pool: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&i| !packing.is_placed(i))
            .collect();
        if pool.is_empty() {
            break;
        }
        let placed: Vec<usize> = (0..inst.len()).filter(|&i| packing.is_placed(i)).collect();
        iterations += 1;

        let mut best: Option<(u64, Changes)> = None;
        for sample in 0..SAMPLES {
            if sample > 0 && Instant::now() >= deadline {
                break;
            }
            // of two random unpacked items take the smaller; it is likelier to fit
            let add = {
                let (a, b) = (
                    pool[rng.gen_range(0..pool.len())],
                    pool[rng.gen_range(0..pool.len())],
                );
                let area = |i: usize| inst.items()[i].polygon.twice_area();
                if (area(b), b) < (area(a), a) {
                    b
                } else {
                    a
                }
            };
            let mv = cfg.ls_moves[rng.gen_range(0..cfg.ls_moves.len())];
            let cand = match (mv, placed.is_empty()) {
                (Move::Insert, _) | (_, true) => Candidate::Insert(add),
                (Move::Relocate, false) => Candidate::Relocate {
                    add,
                    moved: placed[rng.gen_range(0..placed.len())],
                },
                (Move::SwapPair, false) => {
                    let others: Vec<usize> = pool.iter().copied().filter(|&p| p != add).collect();
                    Candidate::SwapPair {
                        out: placed[rng.gen_range(0..placed.len())],
                        add,
                        extra: (!others.is_empty() && rng.gen_bool(0.5))
                            .then(|| others[rng.gen_range(0..others.len())]),
                    }
                }
                (Move::EjectChain, false) => {
                    let first = placed[rng.gen_range(0..placed.len())];
                    let near = packing.neighbours(first, packing.offset(first).expect("placed"));
                    let second = if near.is_empty() || placed.len() < 2 {
                        placed[rng.gen_range(0..placed.len())]
                    } else {
                        near[rng.gen_range(0..near.len())]
                    };
                    if second == first {
                        Candidate::Relocate { add, moved: first }
                    } else {
                        Candidate::EjectChain { add, first, second }
                    }
                }
            };
            let k = key(&cand, &packing);
            if memory.contains(k) {
                continue;
            }
            match evaluate(&mut packing, cand, cfg.grid_levels) {
                Some((gain, changes)) => {
                    if best.as_ref().is_none_or(|b| gain > b.0) {
                        best = Some((gain, changes));
                    }
                }
                None => memory.insert(k),
            }
        }

        match best {
            Some((_, changes)) => {
                for &(i, _) in &changes {
                    packing.set(i, None);
                }
                for (i, t) in changes {
                    packing.set(i, t);
                }
                improvements += 1;
                idle = 0;
                log::debug!("iteration {iterations}: value {}", packing.value());
            }
            None => idle += 1,
        }
        trace.push(packing.value());
        if iterations % 100 == 0 {
            log::info!(
                "iteration {iterations}: value {}, {} items",
                packing.value(),
                packing.placed_count()
            );
        }
    }
    LocalSearchResult {
        solution: packing.to_solution(),
        trace,
        iterations,
        improvements,
    }
}
