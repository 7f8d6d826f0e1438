//! Base-4 digit-reversal ("van der Corput style") points on a triangle.
//!
//! Every triangle splits into four congruent children by connecting edge
//! midpoints. Writing the index `i` in base 4, little-endian, and descending
//! one child per digit addresses a nested subtriangle; the point for `i` is
//! that subtriangle's centroid. The child table is
//!
//! ```text
//! T(0) = Δ((B+C)/2, (A+C)/2, (A+B)/2)     (central, inverted)
//! T(1) = Δ(A, (A+B)/2, (A+C)/2)           (corner at A)
//! T(2) = Δ((A+B)/2, B, (B+C)/2)           (corner at B)
//! T(3) = Δ((A+C)/2, (B+C)/2, C)           (corner at C)
//! ```
//!
//! The index 0 has no digits and yields the centroid of the triangle itself
//! (which equals the centroid of `T(0)`, `T(0,0)`, …, so padding an address
//! with zeros never moves the point). Any prefix of length `4^k` places
//! exactly one point in each of the `4^k` depth-`k` cells.
//!
//! [`scrambled_vdc`] applies nested uniform scrambling: each node of the
//! depth-`M` child-address tree carries an independent uniform permutation of
//! `{0,1,2,3}`, derived lazily by hashing `(seed, level, address prefix)`.
//! This randomizes points while preserving the one-per-cell balance of every
//! `4^j` prefix, `j ≤ M`.

use crate::geometry::{Point, Triangle};
use crate::hashing::{mix3, splitmix64, unit_f64};
use crate::sample::SampleSet;
use crate::{Error, Result};

/// Default scramble depth: digits beyond this carry no weight at double
/// precision for the point counts used in practice.
pub const DEFAULT_SCRAMBLE_DEPTH: u32 = 16;

/// Maximum supported scramble depth (two bits of address per level must fit
/// a 64-bit prefix code).
pub const MAX_SCRAMBLE_DEPTH: u32 = 31;

/// Base-4 digits of `i`, little-endian (least significant first). The empty
/// vector encodes `i = 0`.
pub fn base4_digits(mut i: u64) -> Vec<u8> {
    let mut ds = Vec::new();
    while i > 0 {
        ds.push((i & 3) as u8);
        i >>= 2;
    }
    ds
}

/// Inverse of [`base4_digits`]; trailing zeros are allowed and ignored.
pub fn digits_to_index(ds: &[u8]) -> Result<u64> {
    let mut i = 0u64;
    for (k, &d) in ds.iter().enumerate() {
        if d > 3 {
            return Err(Error::BadDigit(d));
        }
        i += (d as u64) << (2 * k as u64);
    }
    Ok(i)
}

/// Child `d` of the four-way midpoint subdivision of `t`.
pub fn child_triangle(t: &Triangle, d: u8) -> Result<Triangle> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let mab = Point::midpoint(a, b);
    let mac = Point::midpoint(a, c);
    let mbc = Point::midpoint(b, c);
    let (ca, cb, cc) = match d {
        0 => (mbc, mac, mab),
        1 => (a, mab, mac),
        2 => (mab, b, mbc),
        3 => (mac, mbc, c),
        _ => return Err(Error::BadDigit(d)),
    };
    Ok(Triangle::new(ca, cb, cc).expect("child of a nondegenerate triangle is nondegenerate"))
}

/// Descend the subdivision along a digit string (first digit first).
pub fn descend(t: &Triangle, ds: &[u8]) -> Result<Triangle> {
    let mut cur = *t;
    for &d in ds {
        cur = child_triangle(&cur, d)?;
    }
    Ok(cur)
}

/// The digit-reversal point for index `i`: centroid of the subtriangle
/// addressed by the base-4 digits of `i`.
pub fn vdc_point(t: &Triangle, i: u64) -> Point {
    let ds = base4_digits(i);
    descend(t, &ds)
        .expect("digits are valid by construction")
        .centroid()
}

/// The `n` points at indices `start .. start + n` of the sequence.
/// `start = 0` gives the canonical extensible prefix.
pub fn vdc_sequence(t: &Triangle, n: u64, start: u64) -> SampleSet {
    let points = (start..start + n).map(|i| vdc_point(t, i)).collect();
    SampleSet::new_unchecked(*t, points, format!("vdc(start={start},n={n})"))
}

/// Depth-`k` digit address of the cell containing `p`.
///
/// Ties (points exactly on internal subdivision edges) resolve by a fixed
/// corner-closed rule: weight toward `A` at least 1/2 → child 1, else toward
/// `B` → child 2, else toward `C` → child 3, else the central child 0. Cell
/// counts therefore partition any point list deterministically.
pub fn locate_digits(t: &Triangle, p: Point, k: u32) -> Vec<u8> {
    let mut cur = *t;
    let mut ds = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let bc = cur.to_barycentric(p);
        let d = if bc.w1 >= 0.5 {
            1
        } else if bc.w2 >= 0.5 {
            2
        } else if bc.w3 >= 0.5 {
            3
        } else {
            0
        };
        ds.push(d);
        cur = child_triangle(&cur, d).expect("digit is valid");
    }
    ds
}

/// How the scrambled point is placed inside its depth-`M` leaf cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScrambleMode {
    /// Centroid of the leaf (mirrors the deterministic construction).
    Centroid,
    /// Uniform draw inside the leaf from two seed-derived uniforms, making
    /// each point exactly uniform on the triangle.
    UniformLeaf,
}

impl std::fmt::Display for ScrambleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScrambleMode::Centroid => write!(f, "centroid"),
            ScrambleMode::UniformLeaf => write!(f, "uniform-leaf"),
        }
    }
}

/// Seed and depth of a nested uniform scramble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrambleSeed {
    pub seed: u64,
    pub depth: u32,
}

impl ScrambleSeed {
    /// Seed with the default depth of 16.
    pub fn new(seed: u64) -> Self {
        ScrambleSeed {
            seed,
            depth: DEFAULT_SCRAMBLE_DEPTH,
        }
    }

    /// Override the depth (clamped to `1..=31`).
    pub fn with_depth(self, depth: u32) -> Self {
        ScrambleSeed {
            seed: self.seed,
            depth: depth.clamp(1, MAX_SCRAMBLE_DEPTH),
        }
    }
}

/// All 24 permutations of `{0,1,2,3}` in lexicographic order.
const PERMS4: [[u8; 4]; 24] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 2, 1, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
    [1, 0, 2, 3],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 2, 3, 0],
    [1, 3, 0, 2],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 0, 3, 1],
    [2, 1, 0, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [2, 3, 1, 0],
    [3, 0, 1, 2],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [3, 2, 0, 1],
    [3, 2, 1, 0],
];

// Distinct hash streams for the permutation tree and the in-leaf uniforms.
const PERM_STREAM: u64 = 0x7d31_c75a_11ce;
const LEAF_STREAM: u64 = 0x005e_ed0f_1ea5;

/// Uniform permutation for the scramble-tree node at `(level, prefix)`.
/// The 2^64 % 24 modulo bias is ~1e-18 and immaterial at test resolution.
fn node_permutation(seed: u64, level: u32, prefix_code: u64) -> &'static [u8; 4] {
    let h = mix3(splitmix64(seed ^ PERM_STREAM), level as u64, prefix_code);
    &PERMS4[(h % 24) as usize]
}

/// The scrambled depth-`M` digit address for index `i`: digits of `i` padded
/// with zeros to depth `seed.depth`, each digit then remapped by the uniform
/// permutation of its ancestor node (indexed by the unscrambled prefix).
/// Shared prefixes map to shared prefixes, so every `4^j` prefix of the
/// scrambled sequence still occupies each depth-`j` cell exactly once.
pub fn scramble_digits(seed: ScrambleSeed, i: u64) -> Result<Vec<u8>> {
    let plain = base4_digits(i);
    let depth = seed.depth;
    if plain.len() as u32 > depth {
        return Err(Error::DepthTooSmall {
            depth,
            n: i + 1,
            required: plain.len() as u32,
        });
    }
    let mut out = Vec::with_capacity(depth as usize);
    // prefix_code packs the unscrambled digits seen so far, two bits each;
    // the level in the hash keys disambiguates prefixes of different length.
    let mut prefix_code = 0u64;
    for level in 0..depth {
        let d = *plain.get(level as usize).unwrap_or(&0);
        let perm = node_permutation(seed.seed, level, prefix_code);
        out.push(perm[d as usize]);
        prefix_code |= (d as u64) << (2 * level);
    }
    Ok(out)
}

/// Nested-uniform-scrambled sequence of `n` points (indices `0..n`).
///
/// Errors with [`Error::DepthTooSmall`] when `seed.depth` cannot address all
/// `n` indices. In [`ScrambleMode::Centroid`] each point is the centroid of
/// its scrambled depth-`M` leaf; in [`ScrambleMode::UniformLeaf`] the point
/// is drawn uniformly inside the leaf via two seed-derived uniforms (a
/// reflection fold of the leaf's bounding parallelogram, so exactly two
/// uniforms are consumed per point).
pub fn scrambled_vdc(
    t: &Triangle,
    n: u64,
    seed: ScrambleSeed,
    mode: ScrambleMode,
) -> Result<SampleSet> {
    if n > 0 {
        // Validate the depth up front against the largest index.
        let required = base4_digits(n - 1).len() as u32;
        if required > seed.depth {
            return Err(Error::DepthTooSmall {
                depth: seed.depth,
                n,
                required,
            });
        }
    }
    let leaf_key = splitmix64(seed.seed ^ LEAF_STREAM);
    let mut points = Vec::with_capacity(n as usize);
    for i in 0..n {
        let ds = scramble_digits(seed, i)?;
        let leaf = descend(t, &ds)?;
        let p = match mode {
            ScrambleMode::Centroid => leaf.centroid(),
            ScrambleMode::UniformLeaf => {
                let mut s = unit_f64(mix3(leaf_key, i, 1));
                let mut r = unit_f64(mix3(leaf_key, i, 2));
                if s + r > 1.0 {
                    s = 1.0 - s;
                    r = 1.0 - r;
                }
                leaf.a() + (leaf.b() - leaf.a()) * s + (leaf.c() - leaf.a()) * r
            }
        };
        points.push(p);
    }
    Ok(SampleSet::new_unchecked(
        *t,
        points,
        format!(
            "vdc-scrambled(seed={},depth={},mode={mode},n={n})",
            seed.seed, seed.depth
        ),
    ))
}
