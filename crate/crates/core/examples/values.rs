//! Re-values the items of one instance under every value function.

use num_rational::Rational64;
use polypack::generators::{generate, Family, GenConfig};
use polypack::valuation::{assign_values, ValueKind, ValueSpec};

fn main() {
    let inst = generate(Family::Random, &GenConfig::with_seed(5)).unwrap();
    for kind in ValueKind::ALL {
        let mut spec = ValueSpec::new(kind);
        spec.noise = Rational64::new(1, 10);
        spec.seed = 5;
        if kind == ValueKind::Uniform {
            spec.global_scale = Rational64::from_integer(1000);
        }
        let valued = assign_values(&inst, &spec).unwrap();
        let first: Vec<u64> = valued.items().iter().take(5).map(|it| it.value).collect();
        println!(
            "{:<22} total {:>9}  first items {first:?}",
            kind.name(),
            valued.total_value()
        );
    }
}
