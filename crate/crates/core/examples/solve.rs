//! Greedy packing followed by local search, with the value trace.
//!
//! `cargo run --example solve -- [seed] [iterations]`

use polypack::generators::{generate, Family, GenConfig};
use polypack::solver::{improve_local_traced, solve_greedy, SolverConfig};
use polypack::verifier::verify;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let iterations = args.next().and_then(|s| s.parse().ok()).unwrap_or(300);
    let cfg = GenConfig {
        n_target: 60,
        ..GenConfig::with_seed(seed)
    };
    let inst = generate(Family::Atris, &cfg).unwrap();
    let solver = SolverConfig {
        seed,
        max_iterations: Some(iterations),
        ..SolverConfig::default()
    };
    let greedy = solve_greedy(&inst, &solver);
    println!(
        "{}: greedy packs {} of {} items, value {}",
        inst.name(),
        greedy.placements.len(),
        inst.len(),
        greedy.packed_value(&inst)
    );
    let result = improve_local_traced(&inst, &greedy, &solver);
    println!(
        "local search: {} iterations, {} improvements, value {}",
        result.iterations,
        result.improvements,
        result.solution.packed_value(&inst)
    );
    let report = verify(&inst, &result.solution).unwrap();
    println!("verified: {}", report.to_json());
    let share = report.packed_value as f64 / inst.total_value() as f64;
    println!("packed {:.1}% of the total value", 100.0 * share);
}
