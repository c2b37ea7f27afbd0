//! Reproducible pseudo-random elements with small rational coordinates.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcore::Element;
use crate::exactlin::Rational;

const DENOMINATORS: [u32; 3] = [1, 2, 3];

fn coordinate(rng: &mut ChaCha8Rng) -> Rational {
    let num: i32 = rng.gen_range(-9..=9);
    let den = *DENOMINATORS.choose(rng).expect("nonempty");
    Rational::from(num) / Rational::from(den)
}

fn element(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    Element::new((0..dim).map(|_| coordinate(rng)).collect())
}

/// `count` elements of a `dim`-dimensional space. Numerators lie in
/// `[-9, 9]`, denominators in `{1, 2, 3}`.
pub fn sample_elements(dim: usize, count: usize, seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| element(&mut rng, dim)).collect()
}

pub fn sample_pairs(dim: usize, count: usize, seed: u64) -> Vec<(Element, Element)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (element(&mut rng, dim), element(&mut rng, dim)))
        .collect()
}
