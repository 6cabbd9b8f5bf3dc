//! Box queries on the quad tree used by the verifier.

use polypack::geom::{BBox, Point};
use polypack::verifier::QuadTree;

fn main() {
    let mut tree = QuadTree::new(BBox::of_points(&[Point::new(0, 0), Point::new(1000, 1000)]));
    for i in 0..100 {
        let (x, y) = ((i % 10) as i64 * 100, (i / 10) as i64 * 100);
        tree.insert(
            i,
            BBox::of_points(&[Point::new(x, y), Point::new(x + 100, y + 100)]),
        );
    }
    let probe = BBox::of_points(&[Point::new(150, 150), Point::new(260, 240)]);
    println!("boxes meeting {probe:?}: {:?}", tree.query(&probe));
    println!(
        "open-overlap pairs among the grid cells: {}",
        tree.candidate_pairs().len()
    );
    tree.insert(
        100,
        BBox::of_points(&[Point::new(50, 50), Point::new(150, 150)]),
    );
    println!(
        "pairs after adding an off-grid box: {:?}",
        tree.candidate_pairs()
    );
}
