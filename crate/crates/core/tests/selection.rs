mod common;

use num_rational::Rational64;
use polypack::generators::{generate, Family, GenConfig};
use polypack::geom::Polygon;
use polypack::model::{Instance, Item};
use polypack::selection::{
    compute_metrics, select_diverse, select_from_features, zscore, Pca, SelectionConfig,
    SelectionError, METRIC_NAMES,
};
use rand::Rng;

fn columns(d: usize) -> Vec<&'static str> {
    METRIC_NAMES[..d].to_vec()
}

#[test]
fn metric_examples() {
    let one = Instance::new(
        "one",
        Polygon::rectangle(0, 0, 10, 10).unwrap(),
        vec![Item {
            polygon: Polygon::rectangle(0, 0, 2, 3).unwrap(),
            value: 6,
        }],
    )
    .unwrap();
    let f = compute_metrics(&one);
    assert_eq!(f.values[0], 0.0);
    assert_eq!(f.values[1], 0.0);
    assert_eq!(f.values[2], 1.0);
    assert_eq!(f.values[4], 0.06);
    assert_eq!(f.values[5], 1.0);
    assert_eq!(f.values[6], 4.0);
    assert_eq!(f.values[9], 4.0);
    assert_eq!(f.values[10], 1.5);

    let convex = generate(
        Family::Random,
        &GenConfig {
            convexity_ratio: Rational64::from_integer(1),
            n_target: 30,
            ..GenConfig::with_seed(2)
        },
    )
    .unwrap();
    assert_eq!(compute_metrics(&convex).values[1], 0.0);

    for seed in 0..10 {
        let atris = generate(
            Family::Atris,
            &GenConfig {
                n_target: 30,
                ..GenConfig::with_seed(seed)
            },
        )
        .unwrap();
        let f = compute_metrics(&atris);
        assert_eq!(f.values[5], 1.0);
        assert!(f.values.iter().all(|v| v.is_finite()));
    }
}

fn blobs(r: &mut impl Rng, per: usize) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut names = Vec::new();
    let mut rows = Vec::new();
    for blob in 0..2 {
        for i in 0..per {
            names.push(format!("b{blob}_{i:03}"));
            rows.push(
                (0..11)
                    .map(|c| blob as f64 * 100.0 + c as f64 + r.gen_range(-1.0..1.0))
                    .collect(),
            );
        }
    }
    (names, rows)
}

#[test]
fn two_blobs_two_picks() {
    let mut r = common::rng(1);
    let (names, rows) = blobs(&mut r, 40);
    for seed in 0..100 {
        let sel = select_from_features(&names, &rows, &columns(11), &SelectionConfig::new(2, seed))
            .unwrap();
        let mut prefixes: Vec<&str> = sel.picked.iter().map(|n| &n[..2]).collect();
        prefixes.sort();
        assert_eq!(prefixes, vec!["b0", "b1"], "seed {seed}");
    }
}

#[test]
fn k_equal_n_returns_everything() {
    let mut r = common::rng(2);
    let (names, rows) = blobs(&mut r, 6);
    let sel =
        select_from_features(&names, &rows, &columns(11), &SelectionConfig::new(12, 3)).unwrap();
    let mut got = sel.picked.clone();
    got.sort();
    let mut want = names.clone();
    want.sort();
    assert_eq!(got, want);
    assert!(matches!(
        select_from_features(&names, &rows, &columns(11), &SelectionConfig::new(13, 3)),
        Err(SelectionError::InvalidK { .. })
    ));
}

#[test]
fn input_order_does_not_matter() {
    let mut r = common::rng(4);
    let (names, rows) = blobs(&mut r, 25);
    let cfg = SelectionConfig::new(7, 11);
    let a = select_from_features(&names, &rows, &columns(11), &cfg).unwrap();
    let mut idx: Vec<usize> = (0..names.len()).collect();
    rand::seq::SliceRandom::shuffle(idx.as_mut_slice(), &mut r);
    let n2: Vec<String> = idx.iter().map(|&i| names[i].clone()).collect();
    let r2: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].clone()).collect();
    let b = select_from_features(&n2, &r2, &columns(11), &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn constant_column_is_dropped() {
    let mut r = common::rng(5);
    let (names, mut rows) = blobs(&mut r, 10);
    for row in &mut rows {
        row[3] = 7.0;
    }
    let sel =
        select_from_features(&names, &rows, &columns(11), &SelectionConfig::new(2, 0)).unwrap();
    assert_eq!(sel.dropped, vec![METRIC_NAMES[3].to_string()]);
    assert_eq!(sel.picked.len(), 2);
}

#[test]
fn pca_keeps_95_percent() {
    let mut r = common::rng(6);
    for _ in 0..20 {
        // correlated data: 3 latent factors mixed into 11 columns plus noise
        let mix: Vec<Vec<f64>> = (0..11)
            .map(|_| (0..3).map(|_| r.gen_range(-1.0..1.0)).collect())
            .collect();
        let rows: Vec<Vec<f64>> = (0..200)
            .map(|_| {
                let f: Vec<f64> = (0..3).map(|_| r.gen_range(-5.0..5.0)).collect();
                mix.iter()
                    .map(|m| {
                        m.iter().zip(&f).map(|(a, b)| a * b).sum::<f64>() + r.gen_range(-0.1..0.1)
                    })
                    .collect()
            })
            .collect();
        let (z, _) = zscore(&rows);
        let pca = Pca::fit(&z);
        let m = pca.components_for(0.95);
        assert!(m <= 4, "{m}");
        // reconstruct by back-projection and measure the lost variance
        let total: f64 = z.iter().flatten().map(|x| x * x).sum();
        let mut lost = 0.0;
        for row in &z {
            let p = pca.project(row, m);
            for (c, x) in row.iter().enumerate() {
                let back: f64 = (0..m).map(|k| p[k] * pca.axes[k][c]).sum();
                lost += (x - back) * (x - back);
            }
        }
        assert!(lost / total <= 0.05 + 1e-9, "{}", lost / total);
    }
}

#[test]
fn corpus_of_500_yields_180_across_families() {
    let mut instances = Vec::new();
    for k in 0..500u64 {
        let family = Family::ALL[(k % 4) as usize];
        let cfg = GenConfig {
            n_target: 10 + (k as usize * 7) % 50,
            jigsaw_line_count: 4 + (k as usize % 9),
            jigsaw_copies: 1 + (k as usize % 2),
            area_multiple_t: Rational64::new(10 + (k % 11) as i64, 10),
            ..GenConfig::with_seed(k)
        };
        let cfg = GenConfig {
            name: Some(format!("{}_{k:03}", family)),
            ..cfg
        };
        instances.push(generate(family, &cfg).unwrap());
    }
    let sel = select_diverse(&instances, &SelectionConfig::new(180, 1)).unwrap();
    assert_eq!(sel.picked.len(), 180);
    let distinct: std::collections::HashSet<&String> = sel.picked.iter().collect();
    assert_eq!(distinct.len(), 180);
    for family in Family::ALL {
        assert!(
            sel.picked.iter().any(|n| n.starts_with(family.name())),
            "{family} missing"
        );
    }
    assert!(sel.explained_variance >= 0.95);
}
