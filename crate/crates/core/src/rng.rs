//! Seed derivation for reproducible experiments.
//!
//! All sampling goes through ChaCha12 streams whose seeds are derived from a
//! user seed plus a context path (trial index, length, ...). Serial and
//! parallel runs over the same contexts therefore agree bit for bit.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a root seed and a context path.
pub fn derive_seed(seed: u64, ctx: &[u64]) -> u64 {
    let mut h = splitmix(seed ^ 0xcafe_f00d_d15e_a5e5);
    for &c in ctx {
        h = splitmix(h ^ splitmix(c));
    }
    h
}

/// A ChaCha12 stream for the given seed and context path.
pub fn stream(seed: u64, ctx: &[u64]) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    let mut h = derive_seed(seed, ctx);
    for chunk in key.chunks_mut(8) {
        h = splitmix(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}
