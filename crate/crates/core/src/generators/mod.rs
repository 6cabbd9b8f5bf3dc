//! Seeded instance generators for the four families: random point clouds,
//! jigsaw cuts of the container, and polyomino items with and without shear.

mod atris;
mod config;
mod jigsaw;
mod random;

use std::fmt;
use std::str::FromStr;

pub use atris::{
    category_constant, gen_atris, gen_satris, polyomino_value, rects_outline, sample_shape,
    shear_polygon, shear_value_factor, Shape, Template,
};
pub use config::{
    GenConfig, AREA_MULTIPLE_RANGE, JIGSAW_MAX_SIDE, POLYOMINO_MAX_CONTAINER_AREA, SHEAR_M_RANGE,
    VALUE_SCALE_RANGE,
};
pub use jigsaw::{gen_jigsaw, gen_jigsaw_with_layout, JigsawOutput};
pub use random::{gen_random, nearest_neighbour_chain};

use crate::model::{Instance, InstanceMeta, ValidationError};
use crate::valuation::{assign_values, ValuationError, ValueSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("generation failed: {0}")]
    GenerationFailed(&'static str),
    #[error("sheared polygon is not simple after rounding")]
    NonSimpleAfterRounding,
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Jigsaw,
    Atris,
    Satris,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Random,
        Family::Jigsaw,
        Family::Atris,
        Family::Satris,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Jigsaw => "jigsaw",
            Family::Atris => "atris",
            Family::Satris => "satris",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown generator family {s:?}"))
    }
}

pub fn generate(family: Family, cfg: &GenConfig) -> Result<Instance, GenError> {
    match family {
        Family::Random => gen_random(cfg),
        Family::Jigsaw => gen_jigsaw(cfg),
        Family::Atris => gen_atris(cfg),
        Family::Satris => gen_satris(cfg),
    }
}

/// Names the instance, records provenance and, for families without their
/// own value rule, applies the configured value function.
fn finish(
    inst: Instance,
    family: &str,
    cfg: &GenConfig,
    apply_values: bool,
) -> Result<Instance, GenError> {
    let name = cfg
        .name
        .clone()
        .unwrap_or_else(|| format!("{family}_{}_{}", inst.len(), cfg.seed));
    let mut inst = inst.renamed(name);
    inst.set_meta(Some(InstanceMeta {
        generator: Some(family.to_string()),
        seed: Some(cfg.seed),
        value_function: None,
    }));
    if apply_values {
        // value noise follows the instance seed
        let spec = ValueSpec {
            seed: cfg.seed,
            ..cfg.value_spec.clone()
        };
        inst = assign_values(&inst, &spec)?;
    }
    Ok(inst)
}
