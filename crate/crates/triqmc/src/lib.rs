//! Quasi-Monte Carlo point sets, discrepancy measures, and quadrature on
//! arbitrary nondegenerate triangles.
//!
//! The crate provides two low-discrepancy constructions:
//!
//! * [`vdc::vdc_sequence`] — an extensible base-4 digit-reversal sequence
//!   built on recursive four-way triangle subdivision, with optional nested
//!   uniform scrambling ([`vdc::scrambled_vdc`]);
//! * [`lattice::kronecker_lattice`] — a rotated, rescaled integer lattice
//!   clipped to a right triangle, with the rotation angle chosen so that its
//!   tangent is a quadratic irrational.
//!
//! Quality is measured by the sup-norm discrepancy over corner-anchored
//! parallelograms ([`discrepancy::parallelogram_discrepancy`], computed
//! exactly), over anchored axis-parallel boxes on the right triangle with
//! vertices (0,0), (0,1), (1,1) ([`discrepancy::pc_discrepancy`]), and over
//! the cells of the recursive subdivision
//! ([`discrepancy::subtriangle_discrepancy`]). The [`quadrature`] module
//! turns point sets into integration rules with boundary-aware weights and
//! runs convergence studies.
//!
//! All randomized components (scrambling, lattice shifts) are driven by
//! explicit 64-bit seeds through counter-based hashing, so every result is
//! reproducible bit for bit for a fixed seed, independent of thread count.
//!
//! The `parallel` feature (on by default) parallelizes the heavy loops with
//! rayon; disabling it leaves a dependency-light sequential build. See
//! [`exec::Execution`] for the per-call override used by the benchmarks.

pub mod discrepancy;
pub mod exec;
pub mod geometry;
mod hashing;
pub mod lattice;
pub mod quadrature;
pub mod sample;
pub mod vdc;

pub use discrepancy::{
    parallelogram_discrepancy, parallelogram_discrepancy_grid, parallelogram_discrepancy_grid_with,
    parallelogram_discrepancy_with, pc_discrepancy, pc_signed_discrepancy, signed_discrepancy,
    subtriangle_discrepancy, DiscrepancyReport, Family, Witness,
};
pub use exec::Execution;
pub use geometry::{
    corner_box_fraction, AffineMap, Barycentric, Corner, FaceClass, Point, ReferenceTriangle,
    Triangle,
};
pub use lattice::{
    check_admissible, default_angle, kronecker_lattice, kronecker_on_triangle, random_shift,
    AdmissibleTangents, LatticeAngle, LatticeConfig, QuadraticIrrationalTangent,
};
pub use quadrature::{
    builtin_integrand, builtin_integrands, convergence_study, face_weight, integrate,
    weighted_mean, ConvergenceRow, Integrand, Smoothness,
};
pub use sample::{Generator, SampleSet};
pub use vdc::{
    base4_digits, child_triangle, descend, digits_to_index, locate_digits, scramble_digits,
    scrambled_vdc, vdc_point, vdc_sequence, ScrambleMode, ScrambleSeed,
};

/// Errors reported by the library.
///
/// Construction-time validation keeps most invariants in the type system
/// (e.g. a [`geometry::Triangle`] is nondegenerate by construction), so many
/// operations downstream are infallible.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The three corners are collinear within tolerance.
    #[error(
        "degenerate triangle: twice-signed area {twice_area:e} is below tolerance {tolerance:e}"
    )]
    DegenerateTriangle { twice_area: f64, tolerance: f64 },

    /// A fraction argument fell outside `[0, 1]`.
    #[error("fraction {value} outside [0, 1]")]
    OutOfRange { value: f64 },

    /// A base-4 digit outside `0..=3`.
    #[error("base-4 digit {0} out of range (expected 0..=3)")]
    BadDigit(u8),

    /// The scramble depth cannot address every requested point.
    #[error("scramble depth {depth} too small for {n} points (need at least {required})")]
    DepthTooSmall { depth: u32, n: u64, required: u32 },

    /// A tangent quadruple failed validation (`b = 0`, `d = 0`, `c ≤ 0`, or
    /// `c` a perfect square).
    #[error("invalid quadratic irrational tangent: {0}")]
    InvalidTangent(String),

    /// A derived tangent denominator vanished, so the admissibility argument
    /// does not apply.
    #[error("tangent quadruple not admissible: {0}")]
    NotAdmissible(String),

    /// An operation that divides by the point count received no points.
    #[error("empty sample set")]
    EmptySampleSet,

    /// The operation requires a specific domain triangle.
    #[error("sample set domain is not the required triangle: {0}")]
    WrongDomain(String),

    /// Error statistics were requested for an integrand without a reference
    /// value.
    #[error("integrand `{0}` carries no exact integral, cannot compute errors")]
    MissingExactIntegral(String),

    /// A point fell outside the closed domain of a sample set.
    #[error("point ({x}, {y}) lies outside the sample domain")]
    PointOutsideDomain { x: f64, y: f64 },

    /// A configuration value failed validation.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
