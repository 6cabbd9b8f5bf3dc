use std::collections::HashMap;

use crate::geom::BBox;

pub const DEFAULT_CAPACITY: usize = 16;
pub const DEFAULT_MAX_DEPTH: usize = 20;

#[derive(Debug, Clone)]
struct Node {
    region: BBox,
    depth: usize,
    children: Option<[usize; 4]>,
    entries: Vec<(usize, BBox)>,
}

/// Region quad tree over integer boxes. An entry lives in the deepest node
/// whose region contains its box, so nothing is stored twice; boxes outside
/// the root region stay at the root.
#[derive(Debug, Clone)]
pub struct QuadTree {
    nodes: Vec<Node>,
    capacity: usize,
    max_depth: usize,
    location: HashMap<usize, usize>,
}

impl QuadTree {
    pub fn new(region: BBox) -> QuadTree {
        QuadTree::with_limits(region, DEFAULT_CAPACITY, DEFAULT_MAX_DEPTH)
    }

    pub fn with_limits(region: BBox, capacity: usize, max_depth: usize) -> QuadTree {
        QuadTree {
            nodes: vec![Node {
                region,
                depth: 0,
                children: None,
                entries: Vec::new(),
            }],
            capacity: capacity.max(1),
            max_depth,
            location: HashMap::new(),
        }
    }

    pub fn region(&self) -> BBox {
        self.nodes[0].region
    }

    pub fn len(&self) -> usize {
        self.location.len()
    }

    pub fn is_empty(&self) -> bool {
        self.location.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.location.contains_key(&id)
    }

    pub fn get(&self, id: usize) -> Option<BBox> {
        let node = *self.location.get(&id)?;
        self.nodes[node]
            .entries
            .iter()
            .find(|e| e.0 == id)
            .map(|e| e.1)
    }

    /// Inserts or replaces the box stored under `id`.
    pub fn insert(&mut self, id: usize, bbox: BBox) {
        self.remove(id);
        let mut node = 0;
        while let Some(&c) = self.nodes[node].children.as_ref().and_then(|ch| {
            ch.iter()
                .find(|&&c| self.nodes[c].region.contains_box(&bbox))
        }) {
            node = c;
        }
        self.nodes[node].entries.push((id, bbox));
        self.location.insert(id, node);
        if self.nodes[node].children.is_none() && self.nodes[node].entries.len() > self.capacity {
            self.split(node);
        }
    }

    pub fn remove(&mut self, id: usize) -> Option<BBox> {
        let node = self.location.remove(&id)?;
        let entries = &mut self.nodes[node].entries;
        let pos = entries
            .iter()
            .position(|e| e.0 == id)
            .expect("location map is consistent");
        Some(entries.swap_remove(pos).1)
    }

    fn split(&mut self, node: usize) {
        let Node { region, depth, .. } = self.nodes[node];
        if depth >= self.max_depth || (region.width() < 2 && region.height() < 2) {
            return;
        }
        let mx = region.min_x + region.width() / 2;
        let my = region.min_y + region.height() / 2;
        let quads = [
            BBox {
                max_x: mx,
                max_y: my,
                ..region
            },
            BBox {
                min_x: mx,
                max_y: my,
                ..region
            },
            BBox {
                max_x: mx,
                min_y: my,
                ..region
            },
            BBox {
                min_x: mx,
                min_y: my,
                ..region
            },
        ];
        let first = self.nodes.len();
        for q in quads {
            self.nodes.push(Node {
                region: q,
                depth: depth + 1,
                children: None,
                entries: Vec::new(),
            });
        }
        let children = [first, first + 1, first + 2, first + 3];
        self.nodes[node].children = Some(children);
        let entries = std::mem::take(&mut self.nodes[node].entries);
        for (id, bbox) in entries {
            let target = children
                .iter()
                .copied()
                .find(|&c| self.nodes[c].region.contains_box(&bbox))
                .unwrap_or(node);
            self.nodes[target].entries.push((id, bbox));
            self.location.insert(id, target);
        }
        for c in children {
            if self.nodes[c].entries.len() > self.capacity {
                self.split(c);
            }
        }
    }

    /// Calls `f` for every entry whose box intersects `query` (closed boxes).
    pub fn for_each_intersecting(&self, query: &BBox, mut f: impl FnMut(usize, &BBox)) {
        let mut stack = vec![0];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            for (id, b) in &node.entries {
                if b.intersects(query) {
                    f(*id, b);
                }
            }
            if let Some(children) = node.children {
                stack.extend(
                    children
                        .into_iter()
                        .filter(|&c| self.nodes[c].region.intersects(query)),
                );
            }
        }
    }

    /// Ids of entries whose boxes intersect `query`, sorted.
    pub fn query(&self, query: &BBox) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_intersecting(query, |id, _| out.push(id));
        out.sort_unstable();
        out
    }

    /// True if some entry other than `skip` has a box whose interior meets
    /// the interior of `query`.
    pub fn any_open_overlap(
        &self,
        query: &BBox,
        skip: Option<usize>,
        mut pred: impl FnMut(usize) -> bool,
    ) -> bool {
        let mut stack = vec![0];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            for (id, b) in &node.entries {
                if Some(*id) != skip && b.overlaps_open(query) && pred(*id) {
                    return true;
                }
            }
            if let Some(children) = node.children {
                stack.extend(
                    children
                        .into_iter()
                        .filter(|&c| self.nodes[c].region.intersects(query)),
                );
            }
        }
        false
    }

    /// Pairs `(a, b)`, `a < b`, whose boxes overlap with positive area,
    /// sorted lexicographically.
    pub fn candidate_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for node in &self.nodes {
            for (id, b) in &node.entries {
                self.for_each_intersecting(b, |other, ob| {
                    if *id < other && b.overlaps_open(ob) {
                        out.push((*id, other));
                    }
                });
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks the structural invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        self.nodes.iter().enumerate().all(|(n, node)| {
            node.entries.iter().all(|(id, b)| {
                self.location.get(id) == Some(&n) && (n == 0 || node.region.contains_box(b))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(x: i64, y: i64, w: i64, h: i64) -> BBox {
        BBox {
            min_x: x,
            min_y: y,
            max_x: x + w,
            max_y: y + h,
        }
    }

    #[test]
    fn splits_and_finds() {
        let mut t = QuadTree::with_limits(bx(0, 0, 1000, 1000), 4, 10);
        for i in 0..100 {
            t.insert(
                i,
                bx((i as i64 % 10) * 100, (i as i64 / 10) * 100, 100, 100),
            );
        }
        assert!(t.check_invariants());
        assert!(t.nodes.len() > 1);
        assert_eq!(t.query(&bx(150, 150, 0, 0)), vec![11]);
        // touching boxes are reported by the closed query but are not pairs
        assert!(t.candidate_pairs().is_empty());
        t.insert(200, bx(50, 50, 100, 100));
        assert_eq!(
            t.candidate_pairs(),
            vec![(0, 200), (1, 200), (10, 200), (11, 200)]
        );
        assert_eq!(t.remove(200), Some(bx(50, 50, 100, 100)));
        assert!(t.candidate_pairs().is_empty());
        assert_eq!(t.len(), 100);
    }

    #[test]
    fn outside_root_stays_at_root() {
        let mut t = QuadTree::with_limits(bx(0, 0, 10, 10), 1, 5);
        t.insert(0, bx(-5, -5, 2, 2));
        t.insert(1, bx(1, 1, 1, 1));
        t.insert(2, bx(-4, -4, 2, 2));
        assert_eq!(t.candidate_pairs(), vec![(0, 2)]);
        assert!(t.check_invariants());
    }
}
