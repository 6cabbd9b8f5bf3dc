//! Checks a valid and a broken solution and prints the reports.

use polypack::generators::{gen_jigsaw_with_layout, GenConfig};
use polypack::geom::Point;
use polypack::model::Placement;
use polypack::verifier::verify;

fn main() {
    let cfg = GenConfig {
        jigsaw_copies: 1,
        jigsaw_perturb: false,
        ..GenConfig::with_seed(3)
    };
    let out = gen_jigsaw_with_layout(&cfg).unwrap();
    let report = verify(&out.instance, &out.layout).unwrap();
    println!(
        "identity layout of {}: {}",
        out.instance.name(),
        report.to_json()
    );
    println!("sum of item values: {}", out.instance.total_value());

    let mut broken = out.layout.clone();
    broken.placements[0] =
        Placement::new(broken.placements[0].item_index, broken.placements[1].offset);
    println!(
        "first piece moved: {}",
        verify(&out.instance, &broken).unwrap().to_json()
    );

    let mut outside = out.layout.clone();
    outside.placements.truncate(1);
    outside.placements[0].offset = outside.placements[0].offset + Point::new(1 << 20, 0);
    println!(
        "pushed outside: {}",
        verify(&out.instance, &outside).unwrap().to_json()
    );
}
