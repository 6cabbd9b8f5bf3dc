//! Generates one instance of each family and prints a summary line.
//!
//! `cargo run --example generate -- [seed] [n]`

use polypack::generators::{generate, Family, GenConfig};
use polypack::model::write_instance;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(40);
    for family in Family::ALL {
        let cfg = GenConfig {
            n_target: n,
            ..GenConfig::with_seed(seed)
        };
        let inst = generate(family, &cfg).expect("generation failed");
        let item_area: f64 = inst
            .items()
            .iter()
            .map(|it| it.polygon.twice_area() as f64 / 2.0)
            .sum();
        let container_area = inst.container().twice_area() as f64 / 2.0;
        println!(
            "{:<20} items {:>4}  total value {:>10}  item/container area {:.3}  file {} bytes",
            inst.name(),
            inst.len(),
            inst.total_value(),
            item_area / container_area,
            write_instance(&inst).len()
        );
    }
}
