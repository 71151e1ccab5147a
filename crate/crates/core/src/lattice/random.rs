use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteLattice, LatticeError, MAX_ELEMENTS};

pub const MIN_RANDOM_SIZE: usize = 3;

/// Ground bits used for random generator sets. Bits above this are handed
/// out one at a time to force single-element growth.
const RANDOM_BITS: u32 = 24;
const FAILED_DRAWS_BEFORE_FRESH_BIT: usize = 6;

/// A random lattice of exactly `size` elements, deterministic in
/// `(size, seed)`.
///
/// Elements are subsets of a ground set. The family is kept closed under
/// intersection (a meet-semilattice); the ground set itself is adjoined at
/// the end as the top. A random draw is accepted only if the closure stays
/// within budget; after repeated rejections the family grows by exactly one
/// set `f ∪ {b}` with a never-used bit `b`, whose intersections with the
/// existing sets are already present.
pub fn random_lattice(size: usize, seed: u64) -> Result<FiniteLattice, LatticeError> {
    if !(MIN_RANDOM_SIZE..=MAX_ELEMENTS).contains(&size) {
        return Err(LatticeError::SizeLimit(size, MIN_RANDOM_SIZE, MAX_ELEMENTS));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = size - 1;
    let density: f64 = rng.gen_range(0.35..0.8);
    let random_set = |rng: &mut ChaCha8Rng| -> u128 {
        (0..RANDOM_BITS)
            .filter(|_| rng.gen_bool(density))
            .fold(0u128, |acc, b| acc | 1 << b)
    };

    let mut family: BTreeSet<u128> = BTreeSet::new();
    family.insert(random_set(&mut rng));
    let mut next_fresh = RANDOM_BITS;
    let mut failures = 0;
    while family.len() < target {
        if failures < FAILED_DRAWS_BEFORE_FRESH_BIT {
            let s = random_set(&mut rng);
            let mut grown = family.clone();
            grown.insert(s);
            for &f in &family {
                grown.insert(f & s);
            }
            if grown.len() <= target && grown.len() > family.len() {
                family = grown;
                failures = 0;
            } else {
                failures += 1;
            }
        } else {
            let pick = rng.gen_range(0..family.len());
            let base = *family.iter().nth(pick).expect("index in range");
            family.insert(base | 1 << next_fresh);
            next_fresh += 1;
            failures = 0;
        }
    }

    let mut sets: Vec<u128> = family.into_iter().collect();
    sets.push(u128::MAX);
    sets.shuffle(&mut rng);
    let up: Vec<u64> = sets
        .iter()
        .map(|&a| {
            sets.iter()
                .enumerate()
                .filter(|&(_, &b)| a & b == a)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let names = (0..size).map(|i| format!("e{i}")).collect();
    FiniteLattice::from_up_sets(names, up)
}
