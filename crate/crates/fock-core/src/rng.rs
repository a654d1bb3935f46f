//! Deterministic RNG streams. Every randomised case derives its own ChaCha
//! stream from `(seed, tags…)`, so cases are reproducible and order-free.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stable 64-bit FNV-1a hash of a name, used to key identity streams.
pub fn name_hash(name: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Derives an independent stream from a base seed and a list of tags.
pub fn stream(seed: u64, tags: &[u64]) -> ChaCha20Rng {
    let mut state = splitmix(seed);
    for &t in tags {
        state = splitmix(state ^ t.rotate_left(17));
    }
    ChaCha20Rng::seed_from_u64(state)
}
