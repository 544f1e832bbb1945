//! Fixtures shared by the benchmarks.

use hecke_core::exactalg::{frac, q, FactoredFunction, Unit, Q};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Raw = (Q, Q, Vec<i64>, i64);

/// `count` random factor lists on a rank `rank` torus, from a fixed seed.
pub fn random_factor_lists(count: usize, rank: usize, seed: u64) -> Vec<Vec<Raw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut out = Vec::new();
            while out.len() < 8 {
                let p = q(rng.gen_range(0..12), *[1, 2, 3, 4, 6].choose(&mut rng).unwrap());
                let k = q(rng.gen_range(-6..=6), *[1, 2].choose(&mut rng).unwrap());
                let x: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
                if frac(p).is_zero() && k.is_zero() && x.iter().all(|a| *a == 0) {
                    continue;
                }
                out.push((p, k, x, *[-1, 1, 2].choose(&mut rng).unwrap()));
            }
            out
        })
        .collect()
}

pub fn normalize_all(lists: &[Vec<Raw>]) -> usize {
    lists
        .iter()
        .map(|raw| FactoredFunction::from_raw(Unit::one(), raw.clone()).expect("nonzero factors").factor_count())
        .sum()
}
