//! Counter-based seed derivation.
//!
//! Every random draw in a sweep comes from a generator seeded by mixing the
//! master seed with a stream tag and a small tuple of counters, so any single
//! (iteration, probability) point can be replayed without running the rest.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream tags keep independent consumers of the same counters apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Codebook = 0x636f_6465_626f_6f6b,
    Message = 0x6d65_7373_6167_6521,
    Channel = 0x6368_616e_6e65_6c21,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a seed from `master`, a stream tag and an ordered list of counters.
pub fn derive_seed(master: u64, stream: Stream, counters: &[u64]) -> u64 {
    counters
        .iter()
        .fold(splitmix64(master ^ stream as u64), |acc, &c| {
            splitmix64(acc ^ splitmix64(c))
        })
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
