//! Sample sets — a list of points tied to the closed triangle they were
//! drawn on — and the unified generator descriptor used by convergence
//! studies and the command-line front end.

use crate::geometry::{AffineMap, Point, Triangle};
use crate::lattice::{kronecker_on_triangle, random_shift, LatticeAngle, LatticeConfig};
use crate::vdc::{scrambled_vdc, vdc_sequence, ScrambleMode, ScrambleSeed};
use crate::{Error, Result};

/// An ordered list of points together with its closed domain triangle and a
/// human-readable descriptor of how it was produced.
///
/// Invariant: every point lies inside the closed domain within the domain's
/// default classification tolerance. Generators uphold this by construction;
/// [`SampleSet::new`] enforces it for externally supplied points (e.g. CSV
/// input).
#[derive(Clone, Debug)]
pub struct SampleSet {
    domain: Triangle,
    points: Vec<Point>,
    meta: String,
}

impl SampleSet {
    /// Build a sample set from external points, validating containment.
    pub fn new(domain: Triangle, points: Vec<Point>, meta: impl Into<String>) -> Result<Self> {
        for p in &points {
            if !domain.classify_default(*p).is_inside() {
                return Err(Error::PointOutsideDomain { x: p.x, y: p.y });
            }
        }
        Ok(SampleSet {
            domain,
            points,
            meta: meta.into(),
        })
    }

    /// Internal constructor for generators whose output is inside the domain
    /// by construction.
    pub(crate) fn new_unchecked(
        domain: Triangle,
        points: Vec<Point>,
        meta: impl Into<String>,
    ) -> Self {
        SampleSet {
            domain,
            points,
            meta: meta.into(),
        }
    }

    pub fn domain(&self) -> &Triangle {
        &self.domain
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    /// The same sample set carried to another domain by the affine map that
    /// matches corners (A→A, B→B, C→C). Barycentric coordinates — and with
    /// them all discrepancy values — are preserved up to rounding.
    pub fn mapped_to(&self, dst: &Triangle) -> SampleSet {
        let m = AffineMap::between(&self.domain, dst);
        let points = self.points.iter().map(|&p| m.apply(p)).collect();
        SampleSet {
            domain: *dst,
            points,
            meta: format!("{} -> mapped", self.meta),
        }
    }
}

/// Descriptor of a point-set construction, abstracting over the concrete
/// generators so studies and the CLI can switch uniformly.
#[derive(Clone, Debug)]
pub enum Generator {
    /// Deterministic digit-reversal sequence starting at index `start`.
    Vdc { start: u64 },
    /// Nested-uniform-scrambled digit-reversal sequence. The per-replicate
    /// seed is supplied at sampling time.
    VdcScrambled { depth: u32, mode: ScrambleMode },
    /// Deterministic Kronecker lattice (no shift).
    Lattice { angle: LatticeAngle, exact_count: bool },
    /// Kronecker lattice with a random shift drawn from the sampling seed.
    LatticeShifted { angle: LatticeAngle, exact_count: bool },
}

impl Generator {
    /// Whether resampling with a different seed changes the output.
    pub fn is_randomized(&self) -> bool {
        matches!(
            self,
            Generator::VdcScrambled { .. } | Generator::LatticeShifted { .. }
        )
    }

    /// Draw `n` points on `domain`. `seed` is ignored by the deterministic
    /// variants.
    pub fn sample(&self, domain: &Triangle, n: u64, seed: u64) -> Result<SampleSet> {
        match self {
            Generator::Vdc { start } => Ok(vdc_sequence(domain, n, *start)),
            Generator::VdcScrambled { depth, mode } => {
                scrambled_vdc(domain, n, ScrambleSeed::new(seed).with_depth(*depth), *mode)
            }
            Generator::Lattice { angle, exact_count } => {
                let cfg = LatticeConfig::new(n, angle.clone())?.exact_count(*exact_count);
                Ok(kronecker_on_triangle(&cfg, domain))
            }
            Generator::LatticeShifted { angle, exact_count } => {
                let cfg = LatticeConfig::new(n, angle.clone())?
                    .exact_count(*exact_count)
                    .shift(random_shift(seed))?
                    .seed(seed);
                Ok(kronecker_on_triangle(&cfg, domain))
            }
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Vdc { start } => write!(f, "vdc(start={start})"),
            Generator::VdcScrambled { depth, mode } => {
                write!(f, "vdc-scrambled(depth={depth},mode={mode})")
            }
            Generator::Lattice { angle, exact_count } => {
                write!(f, "lattice(angle={angle},exact_count={exact_count})")
            }
            Generator::LatticeShifted { angle, exact_count } => {
                write!(f, "lattice-shifted(angle={angle},exact_count={exact_count})")
            }
        }
    }
}
