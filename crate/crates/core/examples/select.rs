//! Picks a diverse subset from a mixed corpus and reports the family mix.

use std::collections::BTreeMap;

use polypack::generators::{generate, Family, GenConfig};
use polypack::selection::{select_diverse, SelectionConfig};

fn main() {
    let mut corpus = Vec::new();
    for family in Family::ALL {
        for seed in 0..15 {
            let cfg = GenConfig {
                n_target: 10 + 5 * seed as usize,
                ..GenConfig::with_seed(seed)
            };
            corpus.push(generate(family, &cfg).unwrap());
        }
    }
    let sel = select_diverse(&corpus, &SelectionConfig::new(12, 7)).unwrap();
    println!(
        "{} candidates, {} PCA components ({:.1}% variance)",
        corpus.len(),
        sel.components,
        100.0 * sel.explained_variance
    );
    let mut mix = BTreeMap::new();
    for name in &sel.picked {
        *mix.entry(name.split('_').next().unwrap().to_string())
            .or_insert(0) += 1;
    }
    println!("picked: {:?}", sel.picked);
    println!("by family: {mix:?}");
}
