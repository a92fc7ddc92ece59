//! Seeded random monomial ideals.
//!
//! Instance `index` of a run with seed `s` draws from its own ChaCha stream,
//! so instances can be generated in any order or in parallel and still come
//! out identical.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimalize_generators, MonomialIdeal};
use crate::monomial::{Multidegree, RingContext};

pub const DEFAULT_ATTEMPTS: usize = 1000;

/// Parameters of one random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub maxexp: u32,
}

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `m` exponent vectors drawn uniformly from `[0, maxexp]^n` minus the origin,
/// redrawn until they are pairwise incomparable.
pub fn random_ideal<R: Rng>(rng: &mut R, params: RandomParams, attempts: usize) -> Result<MonomialIdeal> {
    let RandomParams { n, m, maxexp } = params;
    if n == 0 || maxexp == 0 || m == 0 {
        return Err(Error::Precondition("need n, m, maxexp >= 1".into()));
    }
    let ring = RingContext::numbered(n);
    for _ in 0..attempts.max(1) {
        let gens: Vec<Multidegree> = (0..m)
            .map(|_| loop {
                let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=maxexp)).collect();
                if v.iter().any(|&e| e > 0) {
                    break Multidegree::new(v);
                }
            })
            .collect();
        let minimal = minimalize_generators(&gens);
        if minimal.len() == m {
            return MonomialIdeal::new(ring, minimal);
        }
    }
    Err(Error::Precondition(format!(
        "no ideal with {m} minimal generators in {n} variables with exponents <= {maxexp} after {attempts} attempts"
    )))
}

/// Instance `index` of the run `(seed, params)`.
pub fn random_instance(seed: u64, index: u64, params: RandomParams) -> Result<MonomialIdeal> {
    random_ideal(&mut instance_rng(seed, index), params, DEFAULT_ATTEMPTS)
}

/// `count` ideals with `n` in 2..=6, `m` in 1..=8 and exponents up to 4,
/// parameters drawn per instance and redrawn when no ideal exists.
pub fn corpus(seed: u64, count: usize) -> Vec<(RandomParams, MonomialIdeal)> {
    (0..count as u64)
        .map(|index| {
            let mut rng = instance_rng(seed, index);
            loop {
                let params = RandomParams {
                    n: rng.gen_range(2..=6),
                    m: rng.gen_range(1..=8),
                    maxexp: rng.gen_range(1..=4),
                };
                if let Ok(ideal) = random_ideal(&mut rng, params, 50) {
                    break (params, ideal);
                }
            }
        })
        .collect()
}
