//! Seeded randomness.
//!
//! All generators draw from ChaCha8 keyed by the user seed, with the 64-bit
//! stream selector picking an independent sequence per item index. ChaCha is
//! a counter-based cipher with a fixed specification, so identical seeds give
//! identical draws on every platform; all draws below are integer-valued.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream for container geometry and other per-instance draws.
pub const INSTANCE_STREAM: u64 = u64::MAX;
/// Offset of the per-item streams used for shear decisions.
pub const SHEAR_STREAM_BASE: u64 = 1 << 62;
/// Offset of the per-item streams used for value noise.
pub const NOISE_STREAM_BASE: u64 = 1 << 61;
/// Offset of the per-copy streams used by the jigsaw family.
pub const JIGSAW_STREAM_BASE: u64 = 1 << 60;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Grid resolution of rational draws.
pub const RATIO_STEPS: i64 = 10_000;

/// Uniform draw from `[lo, hi]` on a grid of [`RATIO_STEPS`] + 1 points.
pub fn uniform_ratio(rng: &mut impl Rng, lo: Rational64, hi: Rational64) -> Rational64 {
    let k = rng.gen_range(0..=RATIO_STEPS);
    lo + (hi - lo) * Rational64::new(k, RATIO_STEPS)
}

/// Bernoulli trial with rational probability `p`.
pub fn coin(rng: &mut impl Rng, p: Rational64) -> bool {
    let k = rng.gen_range(0..RATIO_STEPS);
    Rational64::from_integer(k) < p * RATIO_STEPS
}
