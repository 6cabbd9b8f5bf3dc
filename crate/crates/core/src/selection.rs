//! Benchmark curation: eleven metrics per instance, z-scores, principal
//! components, k-means clustering, and one random instance per cluster.
//!
//! Floating point is confined to this module. Metrics are computed with exact
//! geometry and converted to `f64` only when they are returned.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use crate::exact::{half, to_f64};
use crate::geom::{convex_hull, min_area_rect, Polygon};
use crate::model::Instance;
use crate::streams::{self, INSTANCE_STREAM};

pub const METRIC_COUNT: usize = 11;

pub const METRIC_NAMES: [&str; METRIC_COUNT] = [
    "log_items",
    "item_convexity_slack",
    "container_rect_ratio",
    "item_rect_ratio",
    "item_container_area_ratio",
    "axis_alignment",
    "ext_mean_item_vertices",
    "ext_item_area_dispersion",
    "ext_value_density_dispersion",
    "ext_container_vertices",
    "ext_mean_item_aspect",
];

/// Metrics in the order of [`METRIC_NAMES`].
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub name: String,
    pub values: [f64; METRIC_COUNT],
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Squared coefficient of variation; 0 for fewer than two samples.
fn dispersion(xs: &[f64]) -> f64 {
    let m = mean(xs);
    if xs.len() < 2 || m == 0.0 {
        return 0.0;
    }
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64 / (m * m)
}

fn rect_ratio(p: &Polygon) -> f64 {
    to_f64(&(p.area() / min_area_rect(p.vertices()).area))
}

pub fn compute_metrics(instance: &Instance) -> FeatureVector {
    let items = instance.items();
    let container = instance.container();
    let areas: Vec<f64> = items
        .iter()
        .map(|i| i.polygon.twice_area() as f64 / 2.0)
        .collect();

    let slack: Vec<f64> = items
        .iter()
        .map(|i| {
            let hull = convex_hull(i.polygon.vertices())
                .expect("items are two-dimensional")
                .twice_area();
            let diff = hull - i.polygon.twice_area();
            to_f64(&(half(diff) / half(hull)))
        })
        .collect();
    let (mut axis, mut edges) = (0usize, 0usize);
    for item in items {
        for (a, b) in item.polygon.edges() {
            edges += 1;
            axis += (a.x == b.x || a.y == b.y) as usize;
        }
    }
    let total_twice: i128 = items.iter().map(|i| i.polygon.twice_area()).sum();
    let density: Vec<f64> = items
        .iter()
        .zip(&areas)
        .map(|(i, a)| i.value as f64 / a)
        .collect();

    let values = [
        (items.len().max(1) as f64).ln(),
        mean(&slack),
        rect_ratio(container),
        mean(
            &items
                .iter()
                .map(|i| rect_ratio(&i.polygon))
                .collect::<Vec<_>>(),
        ),
        BigRational::new(total_twice.into(), container.twice_area().into())
            .to_f64()
            .unwrap_or(0.0),
        if edges == 0 {
            0.0
        } else {
            axis as f64 / edges as f64
        },
        mean(
            &items
                .iter()
                .map(|i| i.polygon.len() as f64)
                .collect::<Vec<_>>(),
        ),
        dispersion(&areas),
        dispersion(&density),
        container.len() as f64,
        mean(
            &items
                .iter()
                .map(|i| min_area_rect(i.polygon.vertices()).aspect_ratio())
                .collect::<Vec<_>>(),
        ),
    ];
    FeatureVector {
        name: instance.name().to_string(),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionConfig {
    pub k: usize,
    /// Fixed number of principal components; `None` keeps enough components
    /// to explain [`VARIANCE_KEPT`] of the variance.
    pub pca_components: Option<usize>,
    pub seed: u64,
    pub kmeans_restarts: usize,
}

pub const VARIANCE_KEPT: f64 = 0.95;
const MAX_LLOYD_ROUNDS: usize = 300;

impl SelectionConfig {
    pub fn new(k: usize, seed: u64) -> SelectionConfig {
        SelectionConfig {
            k,
            pca_components: None,
            seed,
            kmeans_restarts: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelectionError {
    #[error("k = {k} must lie in [1, {n}]")]
    InvalidK { k: usize, n: usize },
    #[error("instance name {0:?} appears twice")]
    DuplicateName(String),
    #[error("feature rows must all have {0} finite entries")]
    BadFeatures(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    /// One name per cluster, in cluster order.
    pub picked: Vec<String>,
    /// Cluster members, each sorted by name.
    pub clusters: Vec<Vec<String>>,
    /// Feature columns dropped because they were constant.
    pub dropped: Vec<String>,
    pub components: usize,
    pub explained_variance: f64,
}

/// Column-wise z-scores. Constant columns are dropped; the kept column
/// indices are returned alongside.
pub fn zscore(rows: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<usize>) {
    let d = rows.first().map_or(0, |r| r.len());
    let n = rows.len() as f64;
    let mut kept = Vec::new();
    let mut stats = Vec::new();
    for c in 0..d {
        let m = rows.iter().map(|r| r[c]).sum::<f64>() / n;
        let var = rows.iter().map(|r| (r[c] - m) * (r[c] - m)).sum::<f64>() / n;
        let sd = var.sqrt();
        if sd > 1e-12 * m.abs().max(1.0) {
            kept.push(c);
            stats.push((m, sd));
        }
    }
    let out = rows
        .iter()
        .map(|r| {
            kept.iter()
                .zip(&stats)
                .map(|(&c, &(m, sd))| (r[c] - m) / sd)
                .collect()
        })
        .collect();
    (out, kept)
}

/// Principal axes of centred data, by decreasing variance.
#[derive(Debug, Clone)]
pub struct Pca {
    pub axes: Vec<Vec<f64>>,
    pub variances: Vec<f64>,
}

impl Pca {
    pub fn fit(rows: &[Vec<f64>]) -> Pca {
        let d = rows.first().map_or(0, |r| r.len());
        if d == 0 {
            return Pca {
                axes: Vec::new(),
                variances: Vec::new(),
            };
        }
        let n = rows.len().max(1) as f64;
        let cov = DMatrix::from_fn(d, d, |i, j| {
            rows.iter().map(|r| r[i] * r[j]).sum::<f64>() / n
        });
        let eig = cov.symmetric_eigen();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .total_cmp(&eig.eigenvalues[a])
                .then(a.cmp(&b))
        });
        let axes = order
            .iter()
            .map(|&k| {
                let v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
                // fix the sign so results do not depend on the solver
                let pivot =
                    v.iter()
                        .copied()
                        .fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
                v.into_iter()
                    .map(|x| if pivot < 0.0 { -x } else { x })
                    .collect()
            })
            .collect();
        let variances = order.iter().map(|&k| eig.eigenvalues[k].max(0.0)).collect();
        Pca { axes, variances }
    }

    /// Smallest component count explaining at least `share` of the variance.
    pub fn components_for(&self, share: f64) -> usize {
        let total: f64 = self.variances.iter().sum();
        if total <= 0.0 {
            return self.variances.len().min(1);
        }
        let mut acc = 0.0;
        for (k, v) in self.variances.iter().enumerate() {
            acc += v;
            if acc >= share * total - 1e-12 * total {
                return k + 1;
            }
        }
        self.variances.len()
    }

    pub fn explained(&self, m: usize) -> f64 {
        let total: f64 = self.variances.iter().sum();
        if total <= 0.0 {
            1.0
        } else {
            self.variances.iter().take(m).sum::<f64>() / total
        }
    }

    pub fn project(&self, row: &[f64], m: usize) -> Vec<f64> {
        self.axes
            .iter()
            .take(m)
            .map(|a| a.iter().zip(row).map(|(x, y)| x * y).sum())
            .collect()
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Result of one k-means run.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub assignment: Vec<usize>,
    pub inertia: f64,
}

/// k-means++ seeding followed by Lloyd rounds. Every cluster ends non-empty
/// when `k <= points.len()`.
pub fn kmeans(points: &[Vec<f64>], k: usize, rng: &mut impl Rng) -> Clustering {
    let n = points.len();
    let mut centers: Vec<Vec<f64>> = vec![points[rng.gen_range(0..n)].clone()];
    let mut chosen = vec![false; n];
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut idx = n - 1;
            for (i, w) in d2.iter().enumerate() {
                if target < *w {
                    idx = i;
                    break;
                }
                target -= w;
            }
            idx
        } else {
            // every point coincides with a center; fall back to unused points
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.gen_range(0..free.len())]
        };
        chosen[pick] = true;
        centers.push(points[pick].clone());
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(dist2(p, centers.last().expect("just pushed")));
        }
    }

    let dim = points.first().map_or(0, |p| p.len());
    let mut assignment = vec![usize::MAX; n];
    for _ in 0..MAX_LLOYD_ROUNDS {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let best = (0..k)
                .min_by(|&a, &b| {
                    dist2(p, &centers[a])
                        .total_cmp(&dist2(p, &centers[b]))
                        .then(a.cmp(&b))
                })
                .expect("k >= 1");
            if assignment[i] != best {
                assignment[i] = best;
                changed = true;
            }
        }
        fill_empty_clusters(points, &centers, &mut assignment, k);
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignment) {
            counts[c] += 1;
            for (s, x) in sums[c].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        if !changed {
            break;
        }
    }
    fill_empty_clusters(points, &centers, &mut assignment, k);
    let inertia = points
        .iter()
        .zip(&assignment)
        .map(|(p, &c)| dist2(p, &centers[c]))
        .sum();
    Clustering {
        assignment,
        inertia,
    }
}

/// Moves the point farthest from its center (among clusters with more than
/// one member) into each empty cluster.
fn fill_empty_clusters(
    points: &[Vec<f64>],
    centers: &[Vec<f64>],
    assignment: &mut [usize],
    k: usize,
) {
    loop {
        let mut counts = vec![0usize; k];
        for &c in assignment.iter() {
            counts[c] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let Some(far) = (0..points.len())
            .filter(|&i| counts[assignment[i]] > 1)
            .max_by(|&a, &b| {
                dist2(&points[a], &centers[assignment[a]])
                    .total_cmp(&dist2(&points[b], &centers[assignment[b]]))
                    .then(b.cmp(&a))
            })
        else {
            return;
        };
        assignment[far] = empty;
    }
}

/// Clusters named feature rows and picks one member per cluster. Rows are
/// sorted by name first, so the input order does not matter.
pub fn select_from_features(
    names: &[String],
    rows: &[Vec<f64>],
    columns: &[&str],
    cfg: &SelectionConfig,
) -> Result<Selection, SelectionError> {
    let n = names.len();
    if cfg.k == 0 || cfg.k > n {
        return Err(SelectionError::InvalidK { k: cfg.k, n });
    }
    if rows.len() != n
        || rows
            .iter()
            .any(|r| r.len() != columns.len() || r.iter().any(|x| !x.is_finite()))
    {
        return Err(SelectionError::BadFeatures(columns.len()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    if let Some(w) = order.windows(2).find(|w| names[w[0]] == names[w[1]]) {
        return Err(SelectionError::DuplicateName(names[w[0]].clone()));
    }
    let sorted_names: Vec<&String> = order.iter().map(|&i| &names[i]).collect();
    let sorted_rows: Vec<Vec<f64>> = order.iter().map(|&i| rows[i].clone()).collect();

    let (z, kept) = zscore(&sorted_rows);
    let dropped: Vec<String> = (0..columns.len())
        .filter(|c| !kept.contains(c))
        .map(|c| columns[c].to_string())
        .collect();
    for d in &dropped {
        log::warn!("feature {d} is constant over all candidates and was dropped");
    }
    let pca = Pca::fit(&z);
    let m = cfg
        .pca_components
        .map_or_else(|| pca.components_for(VARIANCE_KEPT), |c| c.min(kept.len()));
    let projected: Vec<Vec<f64>> = z.iter().map(|r| pca.project(r, m)).collect();

    let runs: Vec<Clustering> = (0..cfg.kmeans_restarts.max(1) as u64)
        .into_par_iter()
        .map(|r| kmeans(&projected, cfg.k, &mut streams::stream(cfg.seed, r)))
        .collect();
    let best = runs
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.inertia.total_cmp(&b.1.inertia).then(a.0.cmp(&b.0)))
        .expect("at least one run")
        .1;

    let mut clusters: Vec<Vec<String>> = vec![Vec::new(); cfg.k];
    for (i, &c) in best.assignment.iter().enumerate() {
        clusters[c].push(sorted_names[i].clone());
    }
    clusters.retain(|c| !c.is_empty());
    clusters.sort();
    let mut rng = streams::stream(cfg.seed, INSTANCE_STREAM);
    let picked = clusters
        .iter()
        .map(|c| c[rng.gen_range(0..c.len())].clone())
        .collect();
    Ok(Selection {
        picked,
        clusters,
        dropped,
        components: m,
        explained_variance: pca.explained(m),
    })
}

pub fn select_diverse(
    instances: &[Instance],
    cfg: &SelectionConfig,
) -> Result<Selection, SelectionError> {
    let features: Vec<FeatureVector> = instances.par_iter().map(compute_metrics).collect();
    let names: Vec<String> = features.iter().map(|f| f.name.clone()).collect();
    let rows: Vec<Vec<f64>> = features.iter().map(|f| f.values.to_vec()).collect();
    select_from_features(&names, &rows, &METRIC_NAMES, cfg)
}

/// Feature matrix as CSV: a `name` column followed by one column per metric.
pub fn features_csv(features: &[FeatureVector]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name"];
    header.extend(METRIC_NAMES);
    w.write_record(&header).expect("in-memory write");
    for f in features {
        let mut row = vec![f.name.clone()];
        row.extend(f.values.iter().map(|v| format!("{v}")));
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_of_constant_is_zero() {
        assert_eq!(dispersion(&[3.0, 3.0, 3.0]), 0.0);
        assert!((dispersion(&[1.0, 3.0]) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn kmeans_fills_every_cluster_with_duplicates() {
        let pts = vec![vec![0.0]; 6];
        let c = kmeans(&pts, 4, &mut streams::stream(1, 0));
        let mut used: Vec<usize> = c.assignment.clone();
        used.sort();
        used.dedup();
        assert_eq!(used.len(), 4);
    }
}
