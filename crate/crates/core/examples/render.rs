//! Solves a small instance and writes an SVG drawing, with unplaced items in
//! a tray, to the path given as the first argument (default: temp dir).

use std::path::PathBuf;

use polypack::generators::{generate, Family, GenConfig};
use polypack::render::{render, RenderSpec};
use polypack::solver::{solve, SolverConfig};

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("polypack_example.svg"));
    let cfg = GenConfig {
        n_target: 30,
        ..GenConfig::with_seed(4)
    };
    let inst = generate(Family::Satris, &cfg).unwrap();
    let solver = SolverConfig {
        max_iterations: Some(100),
        ..SolverConfig::default()
    };
    let sol = solve(&inst, &solver);
    let spec = RenderSpec {
        show_unplaced: true,
        scale: 2.0,
        ..RenderSpec::default()
    };
    let svg = render(&inst, Some(&sol), &spec).unwrap();
    std::fs::write(&out, &svg).unwrap();
    println!(
        "wrote {} ({} bytes, {} of {} items placed)",
        out.display(),
        svg.len(),
        sol.placements.len(),
        inst.len()
    );
}
