//! Planar triangle geometry: points, nondegenerate triangles, barycentric
//! coordinates, affine maps between triangles, and the area fraction of
//! corner-anchored parallelograms.
//!
//! A [`Triangle`] is validated at construction (strictly positive area
//! relative to its diameter) and immutable afterwards, so downstream code can
//! rely on nondegeneracy without re-checking.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for the nondegeneracy check: twice the signed area must
/// exceed `DEGENERACY_REL_TOL` times the squared diameter.
pub const DEGENERACY_REL_TOL: f64 = 1e-12;

/// Relative factor for the default point-classification tolerance
/// (`factor × diameter`).
pub const CLASSIFY_REL_TOL: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance to `other`.
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Euclidean norm, treating the point as a vector.
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn midpoint(a: Point, b: Point) -> Point {
        Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Cross product of two vectors (z-component).
#[inline]
pub fn cross(u: Point, v: Point) -> f64 {
    u.x * v.y - u.y * v.x
}

/// Label of a triangle corner, in the fixed order used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    A,
    B,
    C,
}

impl Corner {
    pub const ALL: [Corner; 3] = [Corner::A, Corner::B, Corner::C];

    /// The two non-anchor corners in label order. Parallelogram parameters
    /// `(t, u)` always refer to these, in this order: `t` scales the side
    /// toward the first, `u` the side toward the second.
    pub fn others(self) -> (Corner, Corner) {
        match self {
            Corner::A => (Corner::B, Corner::C),
            Corner::B => (Corner::A, Corner::C),
            Corner::C => (Corner::A, Corner::B),
        }
    }
}

impl std::fmt::Display for Corner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Corner::A => write!(f, "A"),
            Corner::B => write!(f, "B"),
            Corner::C => write!(f, "C"),
        }
    }
}

/// Barycentric coordinates with respect to a triangle's corners `(A, B, C)`.
/// The weights sum to 1 by construction (`w3 = 1 − w1 − w2`); weights may be
/// negative for points outside the triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Barycentric {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl Barycentric {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Self {
        Barycentric { w1, w2, w3 }
    }

    pub fn weight(self, corner: Corner) -> f64 {
        match corner {
            Corner::A => self.w1,
            Corner::B => self.w2,
            Corner::C => self.w3,
        }
    }

    pub fn min_weight(self) -> f64 {
        self.w1.min(self.w2).min(self.w3)
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.w1, self.w2, self.w3]
    }
}

/// Where a point sits relative to a closed triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    Outside,
    Vertex,
    Edge,
    Interior,
}

impl FaceClass {
    /// Dimension of the face the point lies on (0 vertex, 1 edge,
    /// 2 interior); `None` when outside.
    pub fn face_dim(self) -> Option<u32> {
        match self {
            FaceClass::Outside => None,
            FaceClass::Vertex => Some(0),
            FaceClass::Edge => Some(1),
            FaceClass::Interior => Some(2),
        }
    }

    pub fn is_inside(self) -> bool {
        self != FaceClass::Outside
    }
}

/// Built-in reference triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceTriangle {
    /// Equilateral triangle scaled to unit area (side length `2 / 3^(1/4)`),
    /// base on the x-axis, apex above.
    EquilateralUnitArea,
    /// Right triangle with corners `(0,0)`, `(0,1)`, `(1,1)` — the domain of
    /// the anchored-box discrepancy.
    PillardsCools,
    /// Right triangle with corners `A=(0,0)`, `B=(0,1)`, `C=(1,0)` — the
    /// canonical domain of the Kronecker lattice construction.
    RightUnit,
}

/// A nondegenerate triangle with labeled corners.
///
/// Corners are ordered and labeled `A`, `B`, `C`; the labels matter for
/// barycentric coordinates, subdivision, and parallelogram anchoring.
/// Construction fails with [`Error::DegenerateTriangle`] when twice the
/// signed area does not exceed `1e-12 ×` the squared diameter, so every
/// `Triangle` value in existence is safely invertible.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        let twice_area = cross(b - a, c - a).abs();
        let sq_diameter = (b - a)
            .norm_sq()
            .max((c - a).norm_sq())
            .max((c - b).norm_sq());
        let tolerance = DEGENERACY_REL_TOL * sq_diameter;
        if twice_area <= tolerance {
            return Err(Error::DegenerateTriangle {
                twice_area,
                tolerance,
            });
        }
        Ok(Triangle { a, b, c })
    }

    /// Construct one of the built-in reference triangles.
    pub fn reference(kind: ReferenceTriangle) -> Triangle {
        let t = match kind {
            ReferenceTriangle::EquilateralUnitArea => {
                // Side length l with area (sqrt(3)/4) l^2 = 1.
                let l = 2.0 / 3f64.powf(0.25);
                Triangle::new(
                    Point::new(0.0, 0.0),
                    Point::new(l, 0.0),
                    Point::new(0.5 * l, 0.5 * 3f64.sqrt() * l),
                )
            }
            ReferenceTriangle::PillardsCools => Triangle::new(
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 1.0),
            ),
            ReferenceTriangle::RightUnit => Triangle::new(
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 0.0),
            ),
        };
        t.expect("reference triangles are nondegenerate")
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    pub fn c(&self) -> Point {
        self.c
    }

    pub fn corners(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn corner(&self, which: Corner) -> Point {
        match which {
            Corner::A => self.a,
            Corner::B => self.b,
            Corner::C => self.c,
        }
    }

    /// Twice the signed area (positive for counterclockwise corner order).
    pub fn twice_signed_area(&self) -> f64 {
        cross(self.b - self.a, self.c - self.a)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.twice_signed_area().abs()
    }

    /// Longest side length.
    pub fn diameter(&self) -> f64 {
        (self.b - self.a)
            .norm()
            .max((self.c - self.a).norm())
            .max((self.c - self.b).norm())
    }

    pub fn centroid(&self) -> Point {
        Point::new(
            (self.a.x + self.b.x + self.c.x) / 3.0,
            (self.a.y + self.b.y + self.c.y) / 3.0,
        )
    }

    /// Distance from the centroid to the nearest edge.
    pub fn centroid_edge_clearance(&self) -> f64 {
        let g = self.centroid();
        segment_distance(g, self.a, self.b)
            .min(segment_distance(g, self.b, self.c))
            .min(segment_distance(g, self.c, self.a))
    }

    /// Barycentric coordinates of `p`. Weights sum to exactly 1
    /// (`w3` is computed as `1 − w1 − w2`).
    pub fn to_barycentric(&self, p: Point) -> Barycentric {
        let denom = self.twice_signed_area();
        let w1 = cross(self.b - p, self.c - p) / denom;
        let w2 = cross(self.c - p, self.a - p) / denom;
        Barycentric::new(w1, w2, 1.0 - w1 - w2)
    }

    /// Point with the given barycentric coordinates.
    pub fn from_barycentric(&self, bc: Barycentric) -> Point {
        Point::new(
            bc.w1 * self.a.x + bc.w2 * self.b.x + bc.w3 * self.c.x,
            bc.w1 * self.a.y + bc.w2 * self.b.y + bc.w3 * self.c.y,
        )
    }

    /// Default classification tolerance: `1e-9 × diameter`.
    pub fn default_classify_tol(&self) -> f64 {
        CLASSIFY_REL_TOL * self.diameter()
    }

    /// Classify `p` against the closed triangle with absolute tolerance
    /// `tol`: within `tol` of a corner → [`FaceClass::Vertex`]; else within
    /// `tol` of an edge segment → [`FaceClass::Edge`]; otherwise decided by
    /// the sign of the smallest barycentric weight. The vertex test wins over
    /// the edge test by construction.
    pub fn classify(&self, p: Point, tol: f64) -> FaceClass {
        let vertex_dist = p.dist(self.a).min(p.dist(self.b)).min(p.dist(self.c));
        if vertex_dist <= tol {
            return FaceClass::Vertex;
        }
        let edge_dist = segment_distance(p, self.a, self.b)
            .min(segment_distance(p, self.b, self.c))
            .min(segment_distance(p, self.c, self.a));
        if edge_dist <= tol {
            return FaceClass::Edge;
        }
        if self.to_barycentric(p).min_weight() >= 0.0 {
            FaceClass::Interior
        } else {
            FaceClass::Outside
        }
    }

    /// Classification with the default tolerance.
    pub fn classify_default(&self, p: Point) -> FaceClass {
        self.classify(p, self.default_classify_tol())
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let min = Point::new(
            self.a.x.min(self.b.x).min(self.c.x),
            self.a.y.min(self.b.y).min(self.c.y),
        );
        let max = Point::new(
            self.a.x.max(self.b.x).max(self.c.x),
            self.a.y.max(self.b.y).max(self.c.y),
        );
        (min, max)
    }
}

impl Point {
    fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

/// Distance from `p` to the closed segment `[s0, s1]`.
pub fn segment_distance(p: Point, s0: Point, s1: Point) -> f64 {
    let d = s1 - s0;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.dist(s0);
    }
    let t = ((p - s0).x * d.x + (p - s0).y * d.y) / len_sq;
    let t = t.clamp(0.0, 1.0);
    p.dist(s0 + d * t)
}

/// An affine map `p ↦ M·p + t` of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    linear: [[f64; 2]; 2],
    translation: [f64; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            linear: [[1.0, 0.0], [0.0, 1.0]],
            translation: [0.0, 0.0],
        }
    }

    /// The unique affine map sending `src`'s corners to `dst`'s corners
    /// (A→A, B→B, C→C), preserving barycentric coordinates. Infallible:
    /// both triangles are nondegenerate by construction.
    pub fn between(src: &Triangle, dst: &Triangle) -> Self {
        // M = B_dst · B_src⁻¹ with edge-vector basis B = [b−a | c−a].
        let su = src.b() - src.a();
        let sv = src.c() - src.a();
        let du = dst.b() - dst.a();
        let dv = dst.c() - dst.a();
        let det = cross(su, sv);
        let inv = [[sv.y / det, -sv.x / det], [-su.y / det, su.x / det]];
        let linear = [
            [
                du.x * inv[0][0] + dv.x * inv[1][0],
                du.x * inv[0][1] + dv.x * inv[1][1],
            ],
            [
                du.y * inv[0][0] + dv.y * inv[1][0],
                du.y * inv[0][1] + dv.y * inv[1][1],
            ],
        ];
        let ax = dst.a().x - (linear[0][0] * src.a().x + linear[0][1] * src.a().y);
        let ay = dst.a().y - (linear[1][0] * src.a().x + linear[1][1] * src.a().y);
        AffineMap {
            linear,
            translation: [ax, ay],
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y + self.translation[0],
            self.linear[1][0] * p.x + self.linear[1][1] * p.y + self.translation[1],
        )
    }

    pub fn determinant(&self) -> f64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    /// Image triangle (re-validated, since a user-composed map could be
    /// singular).
    pub fn map_triangle(&self, t: &Triangle) -> Result<Triangle> {
        Triangle::new(self.apply(t.a()), self.apply(t.b()), self.apply(t.c()))
    }
}

/// Area fraction of the triangle covered by a corner-anchored parallelogram
/// with normalized side fractions `t, u ∈ [0, 1]`: the parallelogram spanned
/// by `t ·` one side and `u ·` the other, intersected with the triangle,
/// divided by the triangle's area. By affine symmetry the value does not
/// depend on the triangle or the anchor corner:
///
/// ```text
/// fraction(t, u) = 2·t·u − max(0, t + u − 1)²
/// ```
pub fn corner_box_fraction(t: f64, u: f64) -> Result<f64> {
    for &v in &[t, u] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { value: v });
        }
    }
    Ok(corner_box_fraction_unchecked(t, u))
}

/// Same as [`corner_box_fraction`] with inputs assumed to be in `[0, 1]`.
#[inline]
pub(crate) fn corner_box_fraction_unchecked(t: f64, u: f64) -> f64 {
    let over = (t + u - 1.0).max(0.0);
    2.0 * t * u - over * over
}
