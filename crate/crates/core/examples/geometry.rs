//! Exact predicates on integer polygons: simplicity, area, hulls, overlap
//! and containment.

use polypack::geom::{
    contained_in_convex, convex_hull, interiors_overlap, is_simple, min_area_bounding_rect, Point,
    Polygon,
};

fn main() {
    let container = Polygon::rectangle(0, 0, 10, 10).unwrap();
    let l_shape = Polygon::new(vec![
        Point::new(0, 0),
        Point::new(4, 0),
        Point::new(4, 1),
        Point::new(1, 1),
        Point::new(1, 3),
        Point::new(0, 3),
    ])
    .unwrap();
    println!(
        "L area = {}, convex = {}",
        l_shape.area(),
        l_shape.is_convex()
    );

    let hull = convex_hull(l_shape.vertices()).unwrap();
    println!(
        "hull area = {}, min rectangle = {}",
        hull.area(),
        min_area_bounding_rect(&l_shape)
    );

    let bowtie = [
        Point::new(0, 0),
        Point::new(2, 2),
        Point::new(2, 0),
        Point::new(0, 2),
    ];
    println!("bowtie simple = {}", is_simple(&bowtie));

    let square = Polygon::rectangle(0, 0, 2, 2).unwrap();
    for t in [Point::new(1, 1), Point::new(1, 2), Point::new(2, 0)] {
        println!(
            "square at {t:?}: overlaps L = {}, inside container = {}",
            interiors_overlap(&l_shape, Point::ORIGIN, &square, t),
            contained_in_convex(&container, &square, t)
        );
    }
    println!(
        "square at (9, 9) inside container = {}",
        contained_in_convex(&container, &square, Point::new(9, 9))
    );
}
