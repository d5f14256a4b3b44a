//! Seeded random rules, specs and configurations for fuzzing and sampling.

use rand::Rng;

use crate::config::EpConfig;
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::{Alphabet, Symbol, Word};

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, q: Alphabet, len: usize) -> Word {
    (0..len).map(|_| rng.gen_range(0..q.size()) as Symbol).collect()
}

pub fn random_rule<R: Rng + ?Sized>(rng: &mut R, q: Alphabet, radius: usize) -> LocalRule {
    let n = q.count_words(2 * radius + 1).expect("small rule");
    LocalRule::new(q, radius, random_word(rng, q, n).into_vec()).expect("valid table")
}

/// Shape of a random spec: window half-width and tail periods are drawn
/// uniformly from the inclusive ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecShape {
    pub alphabet: Alphabet,
    pub radius: usize,
    pub max_k: usize,
    pub max_period: usize,
}

/// A spec whose window rules are independent and whose tails have random periods.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, shape: SpecShape) -> NuCaSpec {
    let k = rng.gen_range(0..=shape.max_k);
    let rule = |rng: &mut R| random_rule(rng, shape.alphabet, shape.radius);
    let window = (0..2 * k + 1).map(|_| rule(rng)).collect();
    let pl = rng.gen_range(1..=shape.max_period);
    let pr = rng.gen_range(1..=shape.max_period);
    let left = (0..pl).map(|_| rule(rng)).collect();
    let right = (0..pr).map(|_| rule(rng)).collect();
    NuCaSpec::with_radius(shape.radius, k, window, left, right).expect("consistent shape")
}

/// A dνCA: one random default rule and a window of `2k+1` random rules,
/// each window rule equal to the default with probability 1/4.
pub fn random_default_perturbed<R: Rng + ?Sized>(rng: &mut R, q: Alphabet, radius: usize, max_k: usize) -> NuCaSpec {
    let default = random_rule(rng, q, radius);
    let k = rng.gen_range(0..=max_k);
    let window = (0..2 * k + 1)
        .map(|_| {
            if rng.gen_ratio(1, 4) {
                default.clone()
            } else {
                random_rule(rng, q, radius)
            }
        })
        .collect();
    NuCaSpec::default_perturbed(default, window).expect("odd window")
}

/// Shape of a random configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigShape {
    pub alphabet: Alphabet,
    pub max_period: usize,
    pub max_center: usize,
    pub max_offset: i64,
}

pub fn random_config<R: Rng + ?Sized>(rng: &mut R, shape: ConfigShape) -> EpConfig {
    let q = shape.alphabet;
    let (pl, pr) = (rng.gen_range(1..=shape.max_period), rng.gen_range(1..=shape.max_period));
    let width = rng.gen_range(0..=shape.max_center);
    let left = random_word(rng, q, pl);
    let right = random_word(rng, q, pr);
    let center = random_word(rng, q, width);
    let offset = rng.gen_range(-shape.max_offset..=shape.max_offset);
    EpConfig::new(left, center, offset, right).expect("nonempty tails")
}
