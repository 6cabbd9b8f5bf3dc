use num_integer::Roots;
use rand::Rng;

use crate::geom::{convex_hull, Point, Polygon};
use crate::model::{Instance, Item};
use crate::streams::{self, coin, INSTANCE_STREAM};

use super::{finish, GenConfig, GenError};

const MAX_ITEM_ATTEMPTS: usize = 1000;
const CONTAINER_POINTS: usize = 24;

/// Random point clouds turned into convex hulls or nearest-neighbour chains.
pub fn gen_random(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.validate()?;
    let mut polys = Vec::with_capacity(cfg.n_target);
    for i in 0..cfg.n_target {
        let mut rng = streams::stream(cfg.seed, i as u64);
        polys.push(random_item(&mut rng, cfg).ok_or(GenError::GenerationFailed("random item"))?);
    }
    let container = random_container(cfg, &polys)?;
    let items = polys
        .into_iter()
        .map(|polygon| Item { polygon, value: 1 })
        .collect();
    let inst = Instance::new(String::new(), container, items)?;
    finish(inst, "random", cfg, true)
}

fn random_item(rng: &mut impl Rng, cfg: &GenConfig) -> Option<Polygon> {
    let size = rng.gen_range(cfg.item_size_range.0..=cfg.item_size_range.1);
    let count = rng.gen_range(cfg.points_per_item.0..=cfg.points_per_item.1);
    let convex = coin(rng, cfg.convexity_ratio);
    for _ in 0..MAX_ITEM_ATTEMPTS {
        let cloud: Vec<Point> = (0..count)
            .map(|_| Point::new(rng.gen_range(0..=size), rng.gen_range(0..=size)))
            .collect();
        let poly = if convex {
            convex_hull(&cloud).ok()
        } else {
            Polygon::new_normalized(nearest_neighbour_chain(cloud)).ok()
        };
        if let Some(p) = poly {
            return Some(p.normalized_to_origin().0);
        }
    }
    None
}

/// Visits the cloud greedily from its lowest point, always stepping to the
/// closest unvisited point. The closed chain is often, but not always, simple.
pub fn nearest_neighbour_chain(mut cloud: Vec<Point>) -> Vec<Point> {
    cloud.sort_unstable();
    cloud.dedup();
    let mut chain = Vec::with_capacity(cloud.len());
    if cloud.is_empty() {
        return chain;
    }
    let mut current = cloud.swap_remove(0);
    chain.push(current);
    while !cloud.is_empty() {
        let (idx, _) = cloud
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| {
                let dx = (p.x - current.x) as i128;
                let dy = (p.y - current.y) as i128;
                (dx * dx + dy * dy, **p)
            })
            .expect("non-empty");
        current = cloud.swap_remove(idx);
        chain.push(current);
    }
    chain
}

/// Convex hull of random lattice points in a disk sized so that the items
/// cover roughly `t` times the container.
fn random_container(cfg: &GenConfig, items: &[Polygon]) -> Result<Polygon, GenError> {
    let total_twice: i128 = items.iter().map(|p| p.twice_area()).sum();
    let largest_side = items
        .iter()
        .map(|p| p.bbox().width().max(p.bbox().height()))
        .max()
        .unwrap_or(1) as i128;
    let t = cfg.area_multiple_t;
    // target area = total / t; a disk of radius r has area about 3.14 r^2 and
    // the hull of a modest point sample keeps roughly 80% of it
    let target_twice = total_twice.max(2) * *t.denom() as i128 / *t.numer() as i128;
    let mut radius = (target_twice * 100 / (2 * 314 * 80 / 100))
        .sqrt()
        .max(largest_side)
        .max(4);
    let mut rng = streams::stream(cfg.seed, INSTANCE_STREAM);
    for _ in 0..2 {
        let hull = disk_hull(&mut rng, radius as i64)?;
        let got = hull.twice_area();
        if got == 0 {
            continue;
        }
        let corrected = (radius * radius * target_twice / got)
            .sqrt()
            .max(largest_side)
            .max(4);
        if (corrected - radius).abs() * 20 <= radius {
            return Ok(hull);
        }
        radius = corrected;
    }
    disk_hull(&mut rng, radius as i64)
}

fn disk_hull(rng: &mut impl Rng, radius: i64) -> Result<Polygon, GenError> {
    let r2 = radius as i128 * radius as i128;
    let mut pts = Vec::with_capacity(CONTAINER_POINTS);
    while pts.len() < CONTAINER_POINTS {
        let x = rng.gen_range(-radius..=radius);
        let y = rng.gen_range(-radius..=radius);
        if (x as i128) * (x as i128) + (y as i128) * (y as i128) <= r2 {
            pts.push(Point::new(x + radius, y + radius));
        }
    }
    convex_hull(&pts).map_err(|_| GenError::GenerationFailed("random container"))
}
