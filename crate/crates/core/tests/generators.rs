mod common;

use num_rational::Rational64;
use polypack::generators::{
    gen_atris, gen_jigsaw, gen_jigsaw_with_layout, gen_random, gen_satris, generate,
    polyomino_value, sample_shape, shear_polygon, shear_value_factor, Family, GenConfig, Template,
};
use polypack::geom::{contained_in_convex, is_convex, Point, Polygon};
use polypack::model::{read_instance, write_instance, Instance};
use polypack::streams;

fn small(seed: u64) -> GenConfig {
    GenConfig {
        n_target: 40,
        ..GenConfig::with_seed(seed)
    }
}

fn assert_valid(inst: &Instance) {
    assert!(is_convex(inst.container().vertices()));
    for item in inst.items() {
        assert!(
            common::brute_is_simple(item.polygon.vertices()),
            "{}: non-simple item",
            inst.name()
        );
        assert!(item.value >= 1);
    }
    let round = read_instance(&write_instance(inst)).expect("emitted instance parses");
    assert_eq!(&round, inst);
}

#[test]
fn every_family_is_deterministic() {
    for family in Family::ALL {
        let a = write_instance(&generate(family, &small(1)).unwrap());
        let b = write_instance(&generate(family, &small(1)).unwrap());
        assert_eq!(a, b, "{family}");
        let c = write_instance(&generate(family, &small(2)).unwrap());
        assert_ne!(a, c, "{family}");
    }
}

#[test]
fn random_family_validity_sweep() {
    for seed in 0..50 {
        let inst = gen_random(&GenConfig::with_seed(seed)).unwrap();
        assert_eq!(inst.len(), 100);
        assert_valid(&inst);
    }
}

#[test]
fn random_family_convexity_ratio_one() {
    let cfg = GenConfig {
        convexity_ratio: Rational64::from_integer(1),
        ..small(3)
    };
    let inst = gen_random(&cfg).unwrap();
    assert!(inst.items().iter().all(|i| i.polygon.is_convex()));
    let cfg = GenConfig {
        convexity_ratio: Rational64::from_integer(0),
        ..small(3)
    };
    let inst = gen_random(&cfg).unwrap();
    assert!(inst.items().iter().any(|i| !i.polygon.is_convex()));
}

#[test]
fn random_container_scales_with_items() {
    let inst = gen_random(&GenConfig::with_seed(4)).unwrap();
    let items: i128 = inst.items().iter().map(|i| i.polygon.twice_area()).sum();
    let ratio = items as f64 / inst.container().twice_area() as f64;
    assert!(ratio > 1.0 && ratio < 2.2, "{ratio}");
}

#[test]
fn jigsaw_validity_sweep() {
    for seed in 0..50 {
        let inst = gen_jigsaw(&GenConfig::with_seed(seed)).unwrap();
        assert_valid(&inst);
    }
}

#[test]
fn unperturbed_jigsaw_tiles_container() {
    for seed in 0..20 {
        let cfg = GenConfig {
            jigsaw_copies: 1,
            jigsaw_perturb: false,
            ..GenConfig::with_seed(seed)
        };
        let out = gen_jigsaw_with_layout(&cfg).unwrap();
        let inst = &out.instance;
        let total: i128 = inst.items().iter().map(|i| i.polygon.twice_area()).sum();
        assert_eq!(total, inst.container().twice_area());
        assert_eq!(out.layout.placements.len(), inst.len());
        for p in &out.layout.placements {
            assert!(contained_in_convex(
                inst.container(),
                &inst.items()[p.item_index].polygon,
                p.offset
            ));
        }
    }
}

#[test]
fn jigsaw_copies_multiply_area() {
    for seed in 0..10 {
        let cfg = GenConfig {
            jigsaw_copies: 3,
            ..GenConfig::with_seed(seed)
        };
        let inst = gen_jigsaw(&cfg).unwrap();
        let total: i128 = inst.items().iter().map(|i| i.polygon.twice_area()).sum();
        let ratio = total as f64 / (3.0 * inst.container().twice_area() as f64);
        assert!((ratio - 1.0).abs() <= 0.02, "{ratio}");
    }
}

#[test]
fn polyomino_area_threshold_and_integrality() {
    for seed in 0..20 {
        for t in [
            Rational64::from_integer(1),
            Rational64::new(3, 2),
            Rational64::from_integer(2),
        ] {
            let cfg = GenConfig {
                area_multiple_t: t,
                ..small(seed)
            };
            for inst in [gen_atris(&cfg).unwrap(), gen_satris(&cfg).unwrap()] {
                let c = inst.container().twice_area();
                let areas: Vec<i128> = inst
                    .items()
                    .iter()
                    .map(|i| i.polygon.twice_area())
                    .collect();
                let total: i128 = areas.iter().sum();
                let largest = *areas.iter().max().unwrap();
                // t < total / c <= t + largest / c
                assert!(Rational64::from_integer(1) * total as i64 > t * c as i64);
                assert!(Rational64::from_integer(total as i64) <= t * c as i64 + largest as i64);
                // the sum without the last item was not above the threshold
                assert!(
                    Rational64::from_integer((total - areas.last().unwrap()) as i64)
                        <= t * c as i64
                );
                assert_valid(&inst);
            }
        }
    }
}

#[test]
fn atris_items_are_axis_parallel() {
    let inst = gen_atris(&small(7)).unwrap();
    for item in inst.items() {
        let v = item.polygon.vertices();
        for k in 0..v.len() {
            let (a, b) = (v[k], v[(k + 1) % v.len()]);
            assert!(a.x == b.x || a.y == b.y);
        }
    }
}

#[test]
fn shapes_stay_edge_connected() {
    let mut rng = streams::stream(11, 0);
    for _ in 0..2000 {
        let shape = sample_shape(&mut rng, (10, 40));
        let r = &shape.rects;
        let touching = |a: &[i64; 4], b: &[i64; 4]| {
            let x_overlap = a[2].min(b[2]) - a[0].max(b[0]);
            let y_overlap = a[3].min(b[3]) - a[1].max(b[1]);
            (x_overlap > 0 && (a[3] == b[1] || b[3] == a[1]))
                || (y_overlap > 0 && (a[2] == b[0] || b[2] == a[0]))
        };
        let mut seen = vec![false; r.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..r.len() {
                if !seen[j] && touching(&r[i], &r[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "{:?}", shape);
        let cells: i128 = r
            .iter()
            .map(|q| 2 * ((q[2] - q[0]) * (q[3] - q[1])) as i128)
            .sum();
        assert_eq!(shape.outline().twice_area(), cells);
    }
}

#[test]
fn value_sum_stays_below_limit_at_scale() {
    let cfg = GenConfig {
        n_target: 50_000,
        area_multiple_t: Rational64::from_integer(2),
        shear_probability: Rational64::from_integer(1),
        ..GenConfig::with_seed(1)
    };
    let inst = gen_satris(&cfg).unwrap();
    assert!(inst.len() > 40_000);
    assert!((inst.total_value() as u128) < 1 << 40);
    assert!(inst
        .items()
        .iter()
        .all(|i| i.polygon.within_limit(polypack::geom::COORD_LIMIT)));
}

#[test]
fn zero_shear_probability_matches_atris() {
    for seed in 0..10 {
        let cfg = GenConfig {
            shear_probability: Rational64::from_integer(0),
            name: Some("x".into()),
            ..small(seed)
        };
        let a = gen_atris(&cfg).unwrap();
        let mut s = gen_satris(&cfg).unwrap();
        s.set_meta(a.meta().cloned());
        assert_eq!(a, s);
    }
}

#[test]
fn shear_examples() {
    let square = Polygon::rectangle(0, 0, 1, 1).unwrap();
    assert_eq!(
        shear_polygon(&square, Rational64::from_integer(0)).unwrap(),
        square
    );
    let sheared = shear_polygon(&square, Rational64::from_integer(1)).unwrap();
    assert_eq!(
        sheared.vertices(),
        &[
            Point::new(0, 0),
            Point::new(1, 0),
            Point::new(2, 1),
            Point::new(1, 1)
        ]
    );
}

#[test]
fn shear_is_area_preserving_before_rounding() {
    // integer m keeps vertices integral, so no rounding happens
    let mut r = common::rng(5);
    for k in 0..100 {
        let poly = common::random_simple_polygon(&mut r, (0, 0), 3 + k % 9, 20.0, 200.0);
        let m = Rational64::from_integer(1 + (k % 3) as i64);
        let s = shear_polygon(&poly, m).unwrap();
        assert_eq!(s.twice_area(), poly.twice_area());
    }
    // for fractional m compare the exact rational image
    for k in 0..100 {
        let poly = common::random_simple_polygon(&mut r, (0, 0), 3 + k % 9, 20.0, 200.0);
        let m = Rational64::new(1 + k as i64, 37);
        let xs: Vec<Rational64> = poly
            .vertices()
            .iter()
            .map(|p| Rational64::from_integer(p.x) + m * p.y)
            .collect();
        let v = poly.vertices();
        let mut twice = Rational64::from_integer(0);
        for i in 0..v.len() {
            let j = (i + 1) % v.len();
            twice += xs[i] * v[j].y - xs[j] * v[i].y;
        }
        assert_eq!(twice, Rational64::from_integer(poly.twice_area() as i64));
    }
}

#[test]
fn shear_value_grows_with_m() {
    let mut prev = Rational64::from_integer(1);
    for k in 0..=190 {
        let m = Rational64::new(10 + k, 100);
        let f = shear_value_factor(m);
        assert!(f > prev);
        prev = f;
    }
    for template in Template::ALL {
        let twice = 2 * 4000;
        let base = polyomino_value(twice, Rational64::from_integer(1), template, None);
        let mut last = base;
        for k in 0..=19 {
            let v = polyomino_value(
                twice,
                Rational64::from_integer(1),
                template,
                Some(Rational64::new(1 + k, 10)),
            );
            assert!(v > last);
            last = v;
        }
    }
}

#[test]
fn satris_validity_sweep() {
    for seed in 0..50 {
        let cfg = GenConfig {
            shear_probability: Rational64::from_integer(1),
            ..small(seed)
        };
        assert_valid(&gen_satris(&cfg).unwrap());
    }
}

#[test]
fn explicit_container_dimensions() {
    let cfg = GenConfig {
        container_width: 500,
        container_height: 300,
        ..small(1)
    };
    let inst = gen_atris(&cfg).unwrap();
    assert_eq!(inst.container().bbox().width(), 500);
    assert_eq!(inst.container().bbox().height(), 300);
    assert_eq!(inst.meta().unwrap().generator.as_deref(), Some("atris"));
}
