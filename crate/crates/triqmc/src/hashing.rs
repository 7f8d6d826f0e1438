//! Counter-based deterministic randomness shared by scrambling, lattice
//! shifts, and replicate-seed derivation.
//!
//! Everything is built on the splitmix64 finalizer: stateless, platform
//! independent, and cheap enough to call per digit. No RNG state is ever
//! stored, which keeps all randomized constructions O(1) in memory and
//! reproducible regardless of evaluation order.

/// splitmix64 finalizer (Stafford mix of the output stream).
#[inline]
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Hash a (key, counter) pair into a fresh 64-bit word.
#[inline]
pub(crate) fn mix2(key: u64, counter: u64) -> u64 {
    splitmix64(key ^ splitmix64(counter))
}

/// Hash a (key, counter, counter) triple.
#[inline]
pub(crate) fn mix3(key: u64, c1: u64, c2: u64) -> u64 {
    splitmix64(mix2(key, c1) ^ splitmix64(c2.wrapping_add(0x6a09e667f3bcc909)))
}

/// Map a hash word to a double in `[0, 1)` using the top 53 bits.
#[inline]
pub(crate) fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
