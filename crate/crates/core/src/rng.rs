//! Seed derivation and the crate-wide random number generator.
//!
//! Every stochastic routine takes an explicit `u64` seed and runs a ChaCha8
//! stream, so results are reproducible across platforms and thread counts.
//! Independent streams for (sweep point, replication) pairs are derived from
//! a master seed with a SplitMix64 finalizer chain.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on u64 with
/// full avalanche, so distinct inputs give well-separated stream seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a stream seed from a master seed and a path of indices
/// (e.g. `[sweep_index, replication, purpose]`).
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut state = splitmix64(master);
    for &part in path {
        state = splitmix64(state ^ splitmix64(part));
    }
    state
}

/// ChaCha8 generator seeded from a single u64.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
