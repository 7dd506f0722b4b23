//! Fixed test corpora: the named families plus seeded random posets.

use crate::families::{self, GeneratorSpec};
use crate::poset::Poset;
use crate::rng::XorShift64Star;

/// Seed of the built-in random corpus.
pub const CORPUS_SEED: u64 = 20_240_611;
pub const CORPUS_SIZE: usize = 200;
pub const CORPUS_MAX_N: usize = 9;

/// `count` random posets with `1..=max_n` points. Sizes, edge
/// probabilities (in `[0.15, 0.75)`) and per-poset seeds are all drawn from
/// one generator seeded with `seed`.
pub fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(GeneratorSpec, Poset)> {
    let mut rng = XorShift64Star::new(seed);
    (0..count)
        .map(|_| {
            let n = 1 + rng.below(max_n.max(1) as u64) as usize;
            let p = 0.15 + 0.6 * rng.next_f64();
            let s = rng.next_u64();
            let spec = GeneratorSpec::Random { n, p, seed: s };
            let poset = families::make(&spec).expect("valid random spec");
            (spec, poset)
        })
        .collect()
}

/// `count` random posets of height one with up to `max_n` points.
pub fn height_one_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Poset> {
    let mut rng = XorShift64Star::new(seed);
    (0..count)
        .map(|_| {
            let n = 2 + rng.below(max_n.saturating_sub(1).max(1) as u64) as usize;
            let bottoms = 1 + rng.below((n - 1) as u64) as usize;
            let tops = n - bottoms;
            let p = 0.15 + 0.6 * rng.next_f64();
            families::random_height_one(bottoms, tops, p, rng.next_u64()).expect("valid sizes")
        })
        .collect()
}

/// Every named family member small enough for the oracle.
pub fn named_spaces() -> Vec<(String, Poset)> {
    let mut specs = vec![
        GeneratorSpec::Example31,
        GeneratorSpec::Example25,
        GeneratorSpec::PseudoCircle,
        GeneratorSpec::Cone {
            base: Box::new(GeneratorSpec::PseudoCircle),
        },
        GeneratorSpec::Cone {
            base: Box::new(GeneratorSpec::Antichain { n: 2 }),
        },
        GeneratorSpec::Antichain { n: 3 },
    ];
    specs.extend((1..=5).map(|n| GeneratorSpec::Chain { n }));
    specs.extend((0..=3).map(|n| GeneratorSpec::XN { n }));
    specs
        .into_iter()
        .map(|s| {
            let p = families::make(&s).expect("named space");
            (s.to_string(), p)
        })
        .collect()
}

/// Named spaces followed by the default random corpus.
pub fn builtin_corpus() -> Vec<(String, Poset)> {
    let mut all = named_spaces();
    all.extend(
        random_corpus(CORPUS_SIZE, CORPUS_MAX_N, CORPUS_SEED)
            .into_iter()
            .map(|(s, p)| (s.to_string(), p)),
    );
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_reproducible() {
        let a = random_corpus(30, 9, 1);
        let b = random_corpus(30, 9, 1);
        assert_eq!(a, b);
        assert!(a.iter().all(|(_, p)| (1..=9).contains(&p.len())));
        let h = height_one_corpus(30, 9, 1);
        assert!(h.iter().all(|p| p.height() == 1 && p.len() <= 9));
    }
}
