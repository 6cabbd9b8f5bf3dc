use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::exact::parse_ratio;
use crate::valuation::{ValueKind, ValueSpec};

use super::GenError;

/// Allowed range of the area multiple `t`.
pub const AREA_MULTIPLE_RANGE: (Rational64, Rational64) =
    (Rational64::new_raw(1, 1), Rational64::new_raw(2, 1));
/// Range of the shear coefficient `m`.
pub const SHEAR_M_RANGE: (Rational64, Rational64) =
    (Rational64::new_raw(1, 10), Rational64::new_raw(2, 1));
/// Range of the per-item random value factor of the polyomino families.
pub const VALUE_SCALE_RANGE: (Rational64, Rational64) =
    (Rational64::new_raw(4, 5), Rational64::new_raw(6, 5));

/// Largest container side for the jigsaw family; keeps line arrangement
/// arithmetic inside `i128`.
pub const JIGSAW_MAX_SIDE: i64 = 1 << 20;
/// Largest polyomino container area; with the largest value multipliers
/// this keeps the value sum below 2^40.
pub const POLYOMINO_MAX_CONTAINER_AREA: i128 = 1 << 37;

/// Parameters shared by all four families. Unused fields are ignored by the
/// families that do not need them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub name: Option<String>,
    /// Item count target (random family: exact; polyomino families: used to
    /// size the container when no dimensions are given).
    pub n_target: usize,
    /// Container dimensions; zero means "derive from `n_target`".
    pub container_width: i64,
    pub container_height: i64,
    pub area_multiple_t: Rational64,
    pub shear_probability: Rational64,
    /// Probability that a random-family item is a convex hull.
    pub convexity_ratio: Rational64,
    /// Random family: points per item cloud.
    pub points_per_item: (usize, usize),
    /// Random family: side of the square each item cloud is drawn from.
    pub item_size_range: (i64, i64),
    pub jigsaw_line_count: usize,
    pub jigsaw_copies: usize,
    /// Jigsaw family: nudge piece vertices by one unit. Disabling this keeps
    /// the pieces an exact tiling of the container.
    pub jigsaw_perturb: bool,
    /// Polyomino families: bounds for row heights and column widths.
    pub pixel_size_range: (i64, i64),
    /// Value function for the random and jigsaw families. Its seed is
    /// replaced by the instance seed.
    pub value_spec: ValueSpec,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            name: None,
            n_target: 100,
            container_width: 0,
            container_height: 0,
            area_multiple_t: Rational64::new(3, 2),
            shear_probability: Rational64::new(1, 2),
            convexity_ratio: Rational64::new(1, 2),
            points_per_item: (4, 12),
            item_size_range: (20, 200),
            jigsaw_line_count: 12,
            jigsaw_copies: 2,
            jigsaw_perturb: true,
            pixel_size_range: (10, 40),
            value_spec: ValueSpec::new(ValueKind::Area),
        }
    }
}

fn in_unit(r: Rational64) -> bool {
    r >= Rational64::zero() && r <= Rational64::one()
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidConfig(m.to_string()));
        if self.area_multiple_t < AREA_MULTIPLE_RANGE.0
            || self.area_multiple_t > AREA_MULTIPLE_RANGE.1
        {
            return bad("area_multiple_t must lie in [1, 2]");
        }
        if !in_unit(self.shear_probability) || !in_unit(self.convexity_ratio) {
            return bad("probabilities must lie in [0, 1]");
        }
        if self.points_per_item.0 < 3 || self.points_per_item.0 > self.points_per_item.1 {
            return bad("points_per_item must be an interval with lower bound >= 3");
        }
        if self.item_size_range.0 < 2
            || self.item_size_range.0 > self.item_size_range.1
            || self.item_size_range.1 > 1 << 30
        {
            return bad("item_size_range must be an interval within [2, 2^30]");
        }
        if self.pixel_size_range.0 < 1
            || self.pixel_size_range.0 > self.pixel_size_range.1
            || self.pixel_size_range.1 > 1 << 20
        {
            return bad("pixel_size_range must be an interval within [1, 2^20]");
        }
        if self.container_width < 0
            || self.container_height < 0
            || (self.container_width == 0) != (self.container_height == 0)
        {
            return bad("container dimensions must both be positive or both be zero");
        }
        if self.jigsaw_line_count == 0 || self.jigsaw_copies == 0 {
            return bad("jigsaw_line_count and jigsaw_copies must be at least 1");
        }
        Ok(())
    }

    /// Reads `key = value` lines (TOML syntax) on top of the defaults.
    pub fn from_config_str(text: &str) -> Result<GenConfig, GenError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| GenError::InvalidConfig(e.to_string()))?;
        let mut cfg = GenConfig::default();
        for (key, value) in &table {
            cfg.set(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &toml::Value) -> Result<(), GenError> {
        let err = || GenError::InvalidConfig(format!("bad value for {key}: {value}"));
        let int = |v: &toml::Value| v.as_integer().ok_or_else(err);
        let ratio = |v: &toml::Value| -> Result<Rational64, GenError> {
            match v {
                toml::Value::Integer(i) => Ok(Rational64::from_integer(*i)),
                toml::Value::Float(f) => parse_ratio(&f.to_string()).ok_or_else(err),
                toml::Value::String(s) => parse_ratio(s).ok_or_else(err),
                _ => Err(err()),
            }
        };
        let pair = |v: &toml::Value| -> Result<(i64, i64), GenError> {
            let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(err)?;
            Ok((int(&a[0])?, int(&a[1])?))
        };
        let count = |v: &toml::Value| usize::try_from(int(v)?).map_err(|_| err());
        match key {
            "seed" => self.seed = u64::try_from(int(value)?).map_err(|_| err())?,
            "name" => self.name = Some(value.as_str().ok_or_else(err)?.to_string()),
            "n_target" => self.n_target = count(value)?,
            "container_width" => self.container_width = int(value)?,
            "container_height" => self.container_height = int(value)?,
            "area_multiple_t" => self.area_multiple_t = ratio(value)?,
            "shear_probability" => self.shear_probability = ratio(value)?,
            "convexity_ratio" => self.convexity_ratio = ratio(value)?,
            "points_per_item" => {
                let (a, b) = pair(value)?;
                self.points_per_item = (
                    usize::try_from(a).map_err(|_| err())?,
                    usize::try_from(b).map_err(|_| err())?,
                );
            }
            "item_size_range" => self.item_size_range = pair(value)?,
            "jigsaw_line_count" => self.jigsaw_line_count = count(value)?,
            "jigsaw_copies" => self.jigsaw_copies = count(value)?,
            "jigsaw_perturb" => self.jigsaw_perturb = value.as_bool().ok_or_else(err)?,
            "pixel_size_range" => self.pixel_size_range = pair(value)?,
            "value_function" => {
                self.value_spec.kind = value.as_str().ok_or_else(err)?.parse().map_err(|_| err())?
            }
            "value_noise" => self.value_spec.noise = ratio(value)?,
            "value_scale" => self.value_spec.global_scale = ratio(value)?,
            _ => return Err(GenError::InvalidConfig(format!("unknown key {key}"))),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let cfg = GenConfig::from_config_str(
            "seed = 9\nn_target = 40\narea_multiple_t = 1.25\nshear_probability = \"1/3\"\npixel_size_range = [5, 9]\nvalue_function = \"uniform\"\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.n_target, 40);
        assert_eq!(cfg.area_multiple_t, Rational64::new(5, 4));
        assert_eq!(cfg.shear_probability, Rational64::new(1, 3));
        assert_eq!(cfg.pixel_size_range, (5, 9));
        assert_eq!(cfg.value_spec.kind, ValueKind::Uniform);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(GenConfig::from_config_str("area_multiple_t = 2.5").is_err());
        assert!(GenConfig::from_config_str("bogus = 1").is_err());
        assert!(GenConfig::from_config_str("container_width = 10").is_err());
        assert!(GenConfig::from_config_str("pixel_size_range = [5, 2]").is_err());
    }
}
