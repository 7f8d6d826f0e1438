//! Kronecker lattices on the right triangle `R = Δ((0,0), (0,1), (1,0))`.
//!
//! The construction rotates the integer lattice anticlockwise by an angle
//! `α`, rescales it by `1/√(2N)` so that about `N` points land in `R`, and
//! keeps the points inside the closed triangle. When `tan α` is a quadratic
//! irrational — written `(a + b√c)/d` with integers, `b, d ≠ 0`, `c > 0` not
//! a perfect square — the rotated lattice avoids rational alignments with
//! the triangle's edges in a quantitatively strong sense, and the resulting
//! sets have parallelogram discrepancy of order `log N / N`.
//!
//! Arbitrary angles in radians are accepted as an explicitly unsafe mode:
//! angles such as `π/4` or `π/2` align lattice rows with the edges and
//! visibly degrade the discrepancy (they are useful as negative controls).
//!
//! [`kronecker_on_triangle`] carries the set to any target triangle by the
//! corner-matching affine map `(x₁, x₂) ↦ A + (C−A)·x₁ + (B−A)·x₂`.

use crate::geometry::{Point, ReferenceTriangle, Triangle};
use crate::hashing::{mix2, splitmix64, unit_f64};
use crate::sample::SampleSet;
use crate::vdc::vdc_point;
use crate::{Error, Result};

/// Absolute tolerance for the closed-boundary clip against `R`.
pub const CLIP_TOL: f64 = 1e-12;

const SHIFT_STREAM: u64 = 0x000b_5e55_ed51_11f7;

/// A quadratic irrational tangent value `(a + b√c)/d`.
///
/// Validation at construction: `b ≠ 0`, `d ≠ 0`, `c > 0` and not a perfect
/// square — so the value is genuinely irrational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticIrrationalTangent {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

fn is_perfect_square(c: i64) -> bool {
    if c < 0 {
        return false;
    }
    let s = (c as f64).sqrt().round() as i64;
    for t in s.saturating_sub(1)..=s + 1 {
        if t >= 0 && t * t == c {
            return true;
        }
    }
    false
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QuadraticIrrationalTangent {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidTangent(format!(
                "b = 0 makes ({a}+{b}*sqrt({c}))/{d} rational"
            )));
        }
        if d == 0 {
            return Err(Error::InvalidTangent("denominator d = 0".into()));
        }
        if c <= 0 {
            return Err(Error::InvalidTangent(format!("c = {c} must be positive")));
        }
        if is_perfect_square(c) {
            return Err(Error::InvalidTangent(format!(
                "c = {c} is a perfect square, the value would be rational"
            )));
        }
        Ok(QuadraticIrrationalTangent { a, b, c, d })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Numerical value `(a + b√c)/d`.
    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.c as f64).sqrt()) / self.d as f64
    }

    /// The rotation angle: `atan` of the value, normalized into `(0, π)`.
    /// (Rotating the integer lattice by `α` and by `α + π` produces the same
    /// point set, so one representative per tangent suffices.)
    pub fn angle_radians(&self) -> f64 {
        let t = self.value().atan();
        if t <= 0.0 {
            t + std::f64::consts::PI
        } else {
            t
        }
    }

    /// Reduce by the gcd of `(a, b, d)` and make the denominator positive.
    fn normalized(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let g = gcd(gcd(a, b), d).max(1);
        let (mut a, mut b, mut d) = (a / g, b / g, d / g);
        if d < 0 {
            a = -a;
            b = -b;
            d = -d;
        }
        QuadraticIrrationalTangent::new(a, b, c, d)
    }
}

impl std::fmt::Display for QuadraticIrrationalTangent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}{:+}*sqrt({}))/{}", self.a, self.b, self.c, self.d)
    }
}

/// The tangent of the default angle, `tan(3π/8) = 1 + √2`.
pub fn default_angle() -> QuadraticIrrationalTangent {
    QuadraticIrrationalTangent::new(1, 1, 2, 1).expect("1 + sqrt(2) is a valid tangent")
}

/// The three tangents whose quadratic irrationality the lattice quality
/// argument needs: the angle itself and its offsets by `−π/2` and `−π/4`
/// (equivalently `−3π/4`; signs are normalized so the denominator is
/// positive, and the approximation quality is sign-invariant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleTangents {
    pub tan_alpha: QuadraticIrrationalTangent,
    pub tan_alpha_minus_half_pi: QuadraticIrrationalTangent,
    pub tan_alpha_minus_three_quarter_pi: QuadraticIrrationalTangent,
}

/// Verify that the offset tangents of `q` are again quadratic irrationals
/// and return all three as explicit quadruples:
///
/// ```text
/// tan(α − π/2)  ~ (d·a − b·d·√c) / (a² − b²·c)
/// tan(α − 3π/4) ~ ((d−a)² + b²·c + 2·b·d·√c) / ((d−a)² − b²·c)
/// ```
///
/// For a validated `q` the denominators can only vanish if `c` were a
/// rational square, which construction rules out; the error path is kept as
/// a defensive guard (it also catches integer overflow of the quadruple
/// arithmetic).
pub fn check_admissible(q: &QuadraticIrrationalTangent) -> Result<AdmissibleTangents> {
    let (a, b, c, d) = (
        q.a as i128,
        q.b as i128,
        q.c as i128,
        q.d as i128,
    );
    let fit = |v: i128| -> Result<i64> {
        i64::try_from(v).map_err(|_| {
            Error::NotAdmissible(format!("quadruple arithmetic overflows 64 bits for {q}"))
        })
    };
    let den_half = a * a - b * b * c;
    if den_half == 0 {
        return Err(Error::NotAdmissible(format!(
            "a^2 - b^2*c = 0 for {q}; tan(alpha - pi/2) is not quadratic irrational"
        )));
    }
    let half = QuadraticIrrationalTangent::normalized(
        fit(d * a)?,
        fit(-(b * d))?,
        q.c,
        fit(den_half)?,
    )?;
    let da = d - a;
    let den_tq = da * da - b * b * c;
    if den_tq == 0 {
        return Err(Error::NotAdmissible(format!(
            "(d-a)^2 - b^2*c = 0 for {q}; tan(alpha - 3pi/4) is not quadratic irrational"
        )));
    }
    let three_quarter = QuadraticIrrationalTangent::normalized(
        fit(da * da + b * b * c)?,
        fit(2 * b * d)?,
        q.c,
        fit(den_tq)?,
    )?;
    Ok(AdmissibleTangents {
        tan_alpha: *q,
        tan_alpha_minus_half_pi: half,
        tan_alpha_minus_three_quarter_pi: three_quarter,
    })
}

/// Rotation angle of a lattice: either a validated quadratic irrational
/// tangent, or a raw angle in radians (unsafe mode — no quality guarantee;
/// rationally aligned angles such as `π/4` or `π/2` are known-bad).
#[derive(Clone, Debug)]
pub enum LatticeAngle {
    Tangent(QuadraticIrrationalTangent),
    RawRadians(f64),
}

impl LatticeAngle {
    pub fn radians(&self) -> f64 {
        match self {
            LatticeAngle::Tangent(q) => q.angle_radians(),
            LatticeAngle::RawRadians(r) => *r,
        }
    }
}

impl std::fmt::Display for LatticeAngle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeAngle::Tangent(q) => write!(f, "tan={q}"),
            LatticeAngle::RawRadians(r) => write!(f, "rad={r}"),
        }
    }
}

/// Configuration of a Kronecker lattice on `R`.
#[derive(Clone, Debug)]
pub struct LatticeConfig {
    target_n: u64,
    angle: LatticeAngle,
    shift: Option<[f64; 2]>,
    exact_count: bool,
    seed: Option<u64>,
}

impl LatticeConfig {
    /// `target_n` must exceed 1 (the construction divides by `√(2N)` and a
    /// single-point lattice is meaningless).
    pub fn new(target_n: u64, angle: LatticeAngle) -> Result<Self> {
        if target_n <= 1 {
            return Err(Error::InvalidConfig(format!(
                "lattice target point count must exceed 1, got {target_n}"
            )));
        }
        Ok(LatticeConfig {
            target_n,
            angle,
            shift: None,
            exact_count: false,
            seed: None,
        })
    }

    /// Shift the integer grid by `s` before rotation and scaling. Components
    /// must lie in `[−1/2, 1/2)`; larger shifts would break the coverage
    /// bound of the grid enumeration.
    pub fn shift(mut self, s: [f64; 2]) -> Result<Self> {
        for v in s {
            if !(-0.5..0.5).contains(&v) {
                return Err(Error::InvalidConfig(format!(
                    "shift component {v} outside [-1/2, 1/2)"
                )));
            }
        }
        self.shift = Some(s);
        Ok(self)
    }

    /// Trim or pad the clipped set to exactly `target_n` points.
    pub fn exact_count(mut self, yes: bool) -> Self {
        self.exact_count = yes;
        self
    }

    /// Record the seed the shift was drawn from (descriptor only).
    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn target_n(&self) -> u64 {
        self.target_n
    }
    pub fn angle(&self) -> &LatticeAngle {
        &self.angle
    }
    pub fn get_shift(&self) -> Option<[f64; 2]> {
        self.shift
    }
}

/// Uniform shift in `[−1/2, 1/2)²` derived from a seed.
pub fn random_shift(seed: u64) -> [f64; 2] {
    let key = splitmix64(seed ^ SHIFT_STREAM);
    [
        unit_f64(mix2(key, 1)) - 0.5,
        unit_f64(mix2(key, 2)) - 0.5,
    ]
}

/// Generate the lattice on the canonical right triangle `R`.
///
/// Steps: enumerate the integer grid `{−n..n}²` with `n = ⌈√(2N)⌉ + 1`
/// (large enough that every pre-image of `R` is covered, shift included);
/// add the optional shift; rotate anticlockwise by `α` and scale by
/// `1/√(2N)`; keep points inside the closed `R` (tolerance [`CLIP_TOL`]).
/// With `exact_count` the result is first sorted lexicographically by
/// `(x, y)`, then truncated, or padded with digit-reversal points on `R`
/// (skipping exact duplicates), to exactly `N` points.
pub fn kronecker_lattice(cfg: &LatticeConfig) -> SampleSet {
    let big_n = cfg.target_n;
    let alpha = cfg.angle.radians();
    let scale = 1.0 / (2.0 * big_n as f64).sqrt();
    let n = (2.0 * big_n as f64).sqrt().ceil() as i64 + 1;
    let (sin_a, cos_a) = alpha.sin_cos();
    let shift = cfg.shift.unwrap_or([0.0, 0.0]);
    let r = Triangle::reference(ReferenceTriangle::RightUnit);

    let mut points = Vec::new();
    for j in -n..=n {
        for k in -n..=n {
            let x0 = j as f64 + shift[0];
            let y0 = k as f64 + shift[1];
            let p = Point::new(
                (cos_a * x0 - sin_a * y0) * scale,
                (sin_a * x0 + cos_a * y0) * scale,
            );
            if r.classify(p, CLIP_TOL).is_inside() {
                points.push(p);
            }
        }
    }

    if cfg.exact_count {
        points.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        let want = big_n as usize;
        if points.len() > want {
            points.truncate(want);
        } else if points.len() < want {
            let mut i = 0u64;
            while points.len() < want {
                let cand = vdc_point(&r, i);
                i += 1;
                if !points.iter().any(|p| p.x == cand.x && p.y == cand.y) {
                    points.push(cand);
                }
            }
        }
    }

    let shift_desc = match cfg.shift {
        Some([sx, sy]) => match cfg.seed {
            Some(s) => format!("seed{s}"),
            None => format!("({sx:.6},{sy:.6})"),
        },
        None => "none".into(),
    };
    SampleSet::new_unchecked(
        r,
        points,
        format!(
            "lattice(n={big_n},angle={},shift={shift_desc},exact_count={})",
            cfg.angle, cfg.exact_count
        ),
    )
}

/// The lattice carried to an arbitrary target triangle by the corner map
/// `(x₁, x₂) ↦ A + (C−A)·x₁ + (B−A)·x₂` (so `(0,0) ↦ A`, `(0,1) ↦ B`,
/// `(1,0) ↦ C`).
pub fn kronecker_on_triangle(cfg: &LatticeConfig, target: &Triangle) -> SampleSet {
    kronecker_lattice(cfg).mapped_to(target)
}
