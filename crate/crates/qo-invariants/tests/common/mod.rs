//! Shared generators for the integration suites.
#![allow(dead_code)] // each test binary uses a different subset

use proptest::prelude::*;

use qo_invariants::{CharacteristicTuple, ExponentPair, Rational};

/// All distinct positive fractions p/q with p, q <= 12, ascending.
pub fn fraction_pool() -> Vec<Rational> {
    let mut pool: Vec<Rational> = (1..=12i64)
        .flat_map(|p| (1..=12i64).map(move |q| Rational::new(p, q)))
        .collect();
    pool.sort();
    pool.dedup();
    pool
}

/// A valid characteristic tuple with at most `max_terms` terms and all
/// exponent numerators and denominators bounded by 12: per coordinate a
/// nondecreasing chain from the pool, with at least one coordinate
/// strictly increasing at every step.
pub fn arb_valid_tuple(max_terms: usize) -> impl Strategy<Value = CharacteristicTuple> {
    let pool = fraction_pool();
    (1..=max_terms).prop_flat_map(move |terms| {
        let pool = pool.clone();
        (
            proptest::collection::vec(0..pool.len(), terms),
            proptest::collection::vec(0..pool.len(), terms),
        )
            .prop_filter_map(
                "every step must strictly increase in some coordinate",
                move |(mut idx1, mut idx2)| {
                    idx1.sort_unstable();
                    idx2.sort_unstable();
                    let strictly_stepping =
                        (0..terms - 1).all(|j| idx1[j + 1] > idx1[j] || idx2[j + 1] > idx2[j]);
                    strictly_stepping.then(|| {
                        CharacteristicTuple::new(
                            idx1.iter()
                                .zip(&idx2)
                                .map(|(&i, &j)| ExponentPair::new(pool[i].clone(), pool[j].clone()))
                                .collect(),
                        )
                    })
                },
            )
    })
}

/// A deterministic splitmix64 stream, for oracle tests that must not
/// depend on an ambient seed.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}
