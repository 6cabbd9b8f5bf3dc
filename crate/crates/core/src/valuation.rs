//! Item value functions: area, convex hull area, minimum rotated bounding
//! box area, or a uniform constant, each optionally scaled by i.i.d.
//! multiplicative noise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{big, half, round_half_up};
use crate::geom::{convex_hull, min_area_bounding_rect, Polygon};
use crate::model::{Instance, VALUE_SUM_LIMIT};
use crate::streams::{self, uniform_ratio, NOISE_STREAM_BASE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Area,
    ConvexHullArea,
    RotatedBoundingBox,
    Uniform,
}

impl ValueKind {
    pub const ALL: [ValueKind; 4] = [
        ValueKind::Area,
        ValueKind::ConvexHullArea,
        ValueKind::RotatedBoundingBox,
        ValueKind::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ValueKind::Area => "area",
            ValueKind::ConvexHullArea => "convex_hull_area",
            ValueKind::RotatedBoundingBox => "rotated_bounding_box",
            ValueKind::Uniform => "uniform",
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ValueKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown value function {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSpec {
    pub kind: ValueKind,
    /// Noise amplitude `eps`; each value is multiplied by a factor drawn
    /// uniformly from `[1 - eps, 1 + eps]`.
    pub noise: Rational64,
    pub seed: u64,
    pub global_scale: Rational64,
    /// Whether to record the value function in the instance metadata.
    pub record_in_meta: bool,
}

pub const DEFAULT_NOISE: Rational64 = Rational64::new_raw(1, 10);

impl ValueSpec {
    pub fn new(kind: ValueKind) -> ValueSpec {
        ValueSpec {
            kind,
            noise: DEFAULT_NOISE,
            seed: 0,
            global_scale: Rational64::one(),
            record_in_meta: true,
        }
    }

    /// Noise-free spec: values depend on geometry alone.
    pub fn exact(kind: ValueKind) -> ValueSpec {
        ValueSpec {
            noise: Rational64::zero(),
            ..ValueSpec::new(kind)
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "{};noise={};scale={}",
            self.kind, self.noise, self.global_scale
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("noise amplitude must lie in [0, 1), got {0}")]
    InvalidNoise(Rational64),
    #[error("global scale must be positive, got {0}")]
    InvalidScale(Rational64),
    #[error("values would sum to {0}, limit is 2^40")]
    ValueOverflow(BigInt),
}

/// Noise-free, unscaled value of one polygon.
pub fn base_value(kind: ValueKind, polygon: &Polygon) -> BigRational {
    match kind {
        ValueKind::Area => polygon.area(),
        ValueKind::ConvexHullArea => half(
            convex_hull(polygon.vertices())
                .expect("simple polygons have 2D hulls")
                .twice_area(),
        ),
        ValueKind::RotatedBoundingBox => min_area_bounding_rect(polygon),
        ValueKind::Uniform => BigRational::one(),
    }
}

/// Replaces every item value by `max(1, round(scale * base * noise))`.
pub fn assign_values(instance: &Instance, spec: &ValueSpec) -> Result<Instance, ValuationError> {
    if spec.noise < Rational64::zero() || spec.noise >= Rational64::one() {
        return Err(ValuationError::InvalidNoise(spec.noise));
    }
    if spec.global_scale <= Rational64::zero() {
        return Err(ValuationError::InvalidScale(spec.global_scale));
    }
    let scale = big(spec.global_scale);
    let lo = Rational64::one() - spec.noise;
    let hi = Rational64::one() + spec.noise;
    let mut total = BigInt::zero();
    let mut values = Vec::with_capacity(instance.len());
    for (i, item) in instance.items().iter().enumerate() {
        let mut v = &scale * base_value(spec.kind, &item.polygon);
        if !spec.noise.is_zero() {
            let mut rng = streams::stream(spec.seed, NOISE_STREAM_BASE + i as u64);
            v *= big(uniform_ratio(&mut rng, lo, hi));
        }
        let rounded = round_half_up(&v).max(BigInt::one());
        total += &rounded;
        if total >= BigInt::from(VALUE_SUM_LIMIT) {
            return Err(ValuationError::ValueOverflow(total));
        }
        values.push(rounded.to_u64().expect("bounded by the value limit"));
    }
    let mut out = instance
        .with_values(&values)
        .expect("geometry unchanged and sum checked");
    let mut meta = out.meta().cloned().unwrap_or_default();
    meta.value_function = spec.record_in_meta.then(|| spec.describe());
    out.set_meta(Some(meta));
    Ok(out)
}
