//! Shelf packing of squares whose total area is half the container.

use polypack::geom::Polygon;
use polypack::model::{Instance, Item};
use polypack::solver::{solve_greedy, PlacementMode, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let side = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut items = Vec::new();
    let mut area = 0;
    loop {
        let s = rng.gen_range(20..300);
        if 2 * (area + s * s) > side * side {
            break;
        }
        area += s * s;
        items.push(Item {
            polygon: Polygon::rectangle(0, 0, s, s).unwrap(),
            value: (s * s) as u64,
        });
    }
    let inst = Instance::new(
        "squares",
        Polygon::rectangle(0, 0, side, side).unwrap(),
        items,
    )
    .unwrap();
    let cfg = SolverConfig {
        mode: PlacementMode::Shelf,
        ..SolverConfig::default()
    };
    let sol = solve_greedy(&inst, &cfg);
    println!(
        "{} squares covering {area} of {}; shelf packing placed {}",
        inst.len(),
        side * side,
        sol.placements.len()
    );
}
