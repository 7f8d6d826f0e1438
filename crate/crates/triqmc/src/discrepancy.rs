//! Discrepancy measures for point sets on triangles.
//!
//! The primary measure is the parallelogram discrepancy: the sup over all
//! corner-anchored parallelograms (anchor corner, normalized side fractions
//! `t, u ∈ (0, 1]`) of the absolute signed discrepancy
//!
//! ```text
//! δ = vol(S ∩ Ω)/vol(Ω) − #(points ∈ S)/N.
//! ```
//!
//! The sup is computed **exactly**: as `t` grows between two consecutive
//! point weights the count is constant and the volume increases
//! monotonically, so the supremum over the closure of the family is attained
//! at a candidate pair — a barycentric weight of some point or 1.0 per axis
//! — evaluated at all four open/closed boundary combinations. The scan runs
//! in `O(N²)` per corner after an `O(N log N)` sort, using histogram prefix
//! counts over the second axis.
//!
//! A grid evaluator caps the cost for large `N` by scanning an equispaced
//! parameter grid instead; it is a guaranteed lower bound of the exact value
//! and is flagged `approximate`.
//!
//! Two companion measures share the machinery: the anchored-box discrepancy
//! on the right triangle with corners (0,0), (0,1), (1,1) (boxes
//! `[0,a₁)×[0,a₂)` instead of parallelograms), and the subdivision-cell
//! discrepancy (worst deviation of depth-`k` cell counts from `N/4^k`).

use crate::exec::{map_collect, Execution};
use crate::geometry::{corner_box_fraction_unchecked, Corner, ReferenceTriangle, Triangle};
use crate::sample::SampleSet;
use crate::vdc::{digits_to_index, locate_digits};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest point count for which the exact `O(N²)`-per-corner sweep runs;
/// beyond it [`parallelogram_discrepancy`] falls back to a grid scan.
pub const EXACT_CEILING: usize = 20_000;

/// Grid resolution used by the automatic fallback above [`EXACT_CEILING`].
pub const FALLBACK_GRID_RESOLUTION: usize = 1024;

/// Which family of test sets a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Parallelogram,
    AnchoredBox,
    Subtriangle,
}

/// The test set attaining the reported value.
///
/// For the parallelogram family: anchor corner and side fractions, `t`
/// toward the first non-anchor corner in label order, `u` toward the second
/// (»A« pairs with (B, C), »B« with (A, C), »C« with (A, B)). `incl_t` /
/// `incl_u` record whether points with a weight exactly equal to the
/// fraction count as inside (the closed side of the sup). For the
/// anchored-box family the anchor is always reported as `A` (the origin) and
/// `(t, u)` are the box extents `(a₁, a₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub corner: Corner,
    pub t: f64,
    pub u: f64,
    pub incl_t: bool,
    pub incl_u: bool,
}

/// Result of a discrepancy computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub family: Family,
    /// The (absolute) discrepancy value.
    pub value: f64,
    /// Witness parameters; recomputing the signed discrepancy at the witness
    /// reproduces `value` up to sign. Absent for the subtriangle family.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// True when the value is a grid lower bound rather than the exact sup.
    pub approximate: bool,
    pub n_points: usize,
}

/// Signed discrepancy of one corner-anchored parallelogram.
///
/// `incl = (incl_t, incl_u)` selects closed (`≤`, true) or open (`<`, false)
/// comparison of each tested weight against its fraction; the open variants
/// realize the limits of the sup from below. Errors: [`Error::EmptySampleSet`]
/// and [`Error::OutOfRange`] for fractions outside `[0, 1]`.
pub fn signed_discrepancy(
    ps: &SampleSet,
    corner: Corner,
    t: f64,
    u: f64,
    incl: (bool, bool),
) -> Result<f64> {
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let vol = crate::geometry::corner_box_fraction(t, u)?;
    let pairs = corner_pairs(ps, corner);
    let count = pairs
        .iter()
        .filter(|(wt, wu)| {
            let in_t = if incl.0 { *wt <= t } else { *wt < t };
            let in_u = if incl.1 { *wu <= u } else { *wu < u };
            in_t && in_u
        })
        .count();
    Ok(vol - count as f64 / ps.len() as f64)
}

/// Exact parallelogram discrepancy with the default execution mode. Falls
/// back to a grid scan (resolution [`FALLBACK_GRID_RESOLUTION`], flagged
/// approximate) above [`EXACT_CEILING`] points.
pub fn parallelogram_discrepancy(ps: &SampleSet) -> Result<DiscrepancyReport> {
    parallelogram_discrepancy_with(ps, Execution::default())
}

/// Exact parallelogram discrepancy on the chosen execution path.
pub fn parallelogram_discrepancy_with(
    ps: &SampleSet,
    exec: Execution,
) -> Result<DiscrepancyReport> {
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    if ps.len() > EXACT_CEILING {
        return parallelogram_discrepancy_grid_with(ps, FALLBACK_GRID_RESOLUTION, exec);
    }
    let mut best = Best::NONE;
    for (ci, corner) in Corner::ALL.into_iter().enumerate() {
        let pairs = corner_pairs(ps, corner);
        let t_cands = exact_candidates(pairs.iter().map(|p| p.0));
        let u_cands = exact_candidates(pairs.iter().map(|p| p.1));
        let b = sup_scan(
            &pairs,
            &t_cands,
            &u_cands,
            ci,
            corner_box_fraction_unchecked,
            exec,
        );
        best = best.merged(b);
    }
    Ok(report_from_best(Family::Parallelogram, best, ps.len(), false))
}

/// Grid lower bound of the parallelogram discrepancy: evaluates the signed
/// discrepancy on an equispaced `resolution × resolution` parameter grid
/// (grid values `i/(resolution−1)`, so 0 and 1 are included), per corner,
/// with all four open/closed combinations. Always `≤` the exact value.
///
/// Panics when `resolution < 2`.
pub fn parallelogram_discrepancy_grid(
    ps: &SampleSet,
    resolution: usize,
) -> Result<DiscrepancyReport> {
    parallelogram_discrepancy_grid_with(ps, resolution, Execution::default())
}

/// Grid scan on the chosen execution path.
pub fn parallelogram_discrepancy_grid_with(
    ps: &SampleSet,
    resolution: usize,
    exec: Execution,
) -> Result<DiscrepancyReport> {
    assert!(resolution >= 2, "grid resolution must be at least 2");
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let cands: Vec<f64> = (0..resolution)
        .map(|i| i as f64 / (resolution - 1) as f64)
        .collect();
    let mut best = Best::NONE;
    for (ci, corner) in Corner::ALL.into_iter().enumerate() {
        let pairs = corner_pairs(ps, corner);
        let b = sup_scan(
            &pairs,
            &cands,
            &cands,
            ci,
            corner_box_fraction_unchecked,
            exec,
        );
        best = best.merged(b);
    }
    Ok(report_from_best(Family::Parallelogram, best, ps.len(), true))
}

/// Anchored-box ("star") discrepancy on the right triangle with corners
/// (0,0), (0,1), (1,1): sup over boxes `[0,a₁)×[0,a₂)`, `a ∈ [0,1)²`, of the
/// absolute signed discrepancy relative to the triangle. Computed exactly by
/// the same candidate scan. Errors with [`Error::WrongDomain`] when the
/// sample set's domain is not that triangle (bitwise corner comparison).
pub fn pc_discrepancy(ps: &SampleSet) -> Result<DiscrepancyReport> {
    pc_check_domain(ps)?;
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let pairs: Vec<(f64, f64)> = ps
        .points()
        .iter()
        .map(|p| (p.x.clamp(0.0, 1.0), p.y.clamp(0.0, 1.0)))
        .collect();
    let t_cands = exact_candidates(pairs.iter().map(|p| p.0));
    let u_cands = exact_candidates(pairs.iter().map(|p| p.1));
    let best = sup_scan(
        &pairs,
        &t_cands,
        &u_cands,
        0,
        pc_box_fraction,
        Execution::default(),
    );
    Ok(report_from_best(Family::AnchoredBox, best, ps.len(), false))
}

/// Signed discrepancy of one anchored box `[0,a₁)×[0,a₂)` against the
/// triangle with corners (0,0), (0,1), (1,1). `incl` works as in
/// [`signed_discrepancy`]: the closed comparison (`x ≤ a₁`) realizes the
/// limit of boxes slightly wider than `a₁`.
pub fn pc_signed_discrepancy(
    ps: &SampleSet,
    a1: f64,
    a2: f64,
    incl: (bool, bool),
) -> Result<f64> {
    pc_check_domain(ps)?;
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    for v in [a1, a2] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange { value: v });
        }
    }
    let count = ps
        .points()
        .iter()
        .filter(|p| {
            let in_t = if incl.0 { p.x <= a1 } else { p.x < a1 };
            let in_u = if incl.1 { p.y <= a2 } else { p.y < a2 };
            in_t && in_u
        })
        .count();
    Ok(pc_box_fraction(a1, a2) - count as f64 / ps.len() as f64)
}

/// Worst absolute deviation of depth-`k` subdivision-cell counts from the
/// ideal `N/4^k`, i.e. `max over cells |1/4^k − count/N|`. Points exactly on
/// internal edges are assigned by the deterministic corner-closed rule of
/// [`locate_digits`].
///
/// Panics when `k > 8` (cell enumeration would explode).
pub fn subtriangle_discrepancy(ps: &SampleSet, k: u32) -> Result<f64> {
    assert!(k <= 8, "subdivision depth must be at most 8");
    if ps.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let cells = 4usize.pow(k);
    let mut counts = vec![0u32; cells];
    for &p in ps.points() {
        let addr = locate_digits(ps.domain(), p, k);
        counts[digits_to_index(&addr).expect("locate digits are valid") as usize] += 1;
    }
    let n = ps.len() as f64;
    let ideal = 1.0 / cells as f64;
    Ok(counts
        .iter()
        .map(|&c| (ideal - c as f64 / n).abs())
        .fold(0.0, f64::max))
}

// ---------------------------------------------------------------------------
// Internals
// ---------------------------------------------------------------------------

fn pc_check_domain(ps: &SampleSet) -> Result<()> {
    let want = Triangle::reference(ReferenceTriangle::PillardsCools);
    let same = ps
        .domain()
        .corners()
        .iter()
        .zip(want.corners())
        .all(|(a, b)| a.x == b.x && a.y == b.y);
    if same {
        Ok(())
    } else {
        Err(Error::WrongDomain(format!(
            "expected corners (0,0), (0,1), (1,1); got {:?}",
            ps.domain().corners()
        )))
    }
}

/// Relative area of `[0,a₁)×[0,a₂) ∩ {0 ≤ x ≤ 1, x ≤ y ≤ 1}` (triangle area
/// 1/2 divided out).
fn pc_box_fraction(a1: f64, a2: f64) -> f64 {
    let area = if a1 <= a2 {
        a2 * a1 - 0.5 * a1 * a1
    } else {
        0.5 * a2 * a2
    };
    2.0 * area
}

/// The two tested barycentric weights of every point for the given anchor,
/// clamped into `[0, 1]` (containment tolerance can produce weights a few
/// ulps outside).
fn corner_pairs(ps: &SampleSet, corner: Corner) -> Vec<(f64, f64)> {
    let (toward_t, toward_u) = corner.others();
    ps.points()
        .iter()
        .map(|&p| {
            let bc = ps.domain().to_barycentric(p);
            (
                bc.weight(toward_t).clamp(0.0, 1.0),
                bc.weight(toward_u).clamp(0.0, 1.0),
            )
        })
        .collect()
}

/// Sorted, deduplicated candidate fractions: the distinct observed weights
/// plus 1.0.
fn exact_candidates(vals: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = vals.chain(std::iter::once(1.0)).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Running best candidate with a total tie-break order, so parallel merges
/// are schedule-independent.
#[derive(Clone, Copy, Debug)]
struct Best {
    abs: f64,
    corner: usize,
    t: f64,
    u: f64,
    incl_t: bool,
    incl_u: bool,
}

impl Best {
    const NONE: Best = Best {
        abs: -1.0,
        corner: usize::MAX,
        t: 0.0,
        u: 0.0,
        incl_t: false,
        incl_u: false,
    };

    /// Larger absolute value wins; exact ties resolve to the smaller
    /// (corner, t, u, incl_t, incl_u) tuple.
    fn merged(self, other: Best) -> Best {
        match self.abs.total_cmp(&other.abs) {
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Equal => {
                let ka = (self.corner, self.t, self.u, self.incl_t, self.incl_u);
                let kb = (other.corner, other.t, other.u, other.incl_t, other.incl_u);
                let ord = ka
                    .0
                    .cmp(&kb.0)
                    .then(ka.1.total_cmp(&kb.1))
                    .then(ka.2.total_cmp(&kb.2))
                    .then(ka.3.cmp(&kb.3))
                    .then(ka.4.cmp(&kb.4));
                if ord == std::cmp::Ordering::Greater {
                    other
                } else {
                    self
                }
            }
        }
    }
}

fn report_from_best(
    family: Family,
    best: Best,
    n_points: usize,
    approximate: bool,
) -> DiscrepancyReport {
    let corner = Corner::ALL[best.corner.min(2)];
    DiscrepancyReport {
        family,
        value: best.abs.max(0.0),
        witness: Some(Witness {
            corner,
            t: best.t,
            u: best.u,
            incl_t: best.incl_t,
            incl_u: best.incl_u,
        }),
        approximate,
        n_points,
    }
}

/// Sup of `|vol(t, u) − count(t, u, incl)/N|` over all candidate pairs and
/// all four open/closed combinations.
///
/// `pairs` are the per-point `(wt, wu)` values. For every t-candidate the
/// active point set is maintained incrementally (two stages: weights
/// strictly below `t`, then weights equal to `t`), and per stage the counts
/// for **all** u-candidates and both u-inclusivities come from prefix sums
/// of two histograms: a point with value `wu` enters the closed count of
/// every candidate `≥ wu` (histogram cell `lower_bound(wu)`) and the open
/// count of every candidate `> wu` (cell `upper_bound(wu)`). Overall
/// `O(|T|·|U|)` after sorting. Chunks of the t-axis are independent, which
/// is what the parallel path exploits.
fn sup_scan(
    pairs: &[(f64, f64)],
    t_cands: &[f64],
    u_cands: &[f64],
    corner: usize,
    vol: fn(f64, f64) -> f64,
    exec: Execution,
) -> Best {
    let n = pairs.len() as f64;
    let mut sorted: Vec<(f64, f64)> = pairs.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Histogram cells per sorted point (u-axis ranks).
    let m = u_cands.len();
    let lb: Vec<u32> = sorted
        .iter()
        .map(|&(_, wu)| u_cands.partition_point(|&c| c < wu) as u32)
        .collect();
    let ub: Vec<u32> = sorted
        .iter()
        .map(|&(_, wu)| u_cands.partition_point(|&c| c <= wu) as u32)
        .collect();

    let chunk_len = (t_cands.len() / max_chunks(exec)).max(64).max(1);
    let chunks: Vec<std::ops::Range<usize>> = (0..t_cands.len())
        .step_by(chunk_len)
        .map(|s| s..(s + chunk_len).min(t_cands.len()))
        .collect();

    let scan_one = |range: std::ops::Range<usize>| -> Best {
        let mut hist_incl = vec![0u32; m];
        let mut hist_excl = vec![0u32; m];
        let mut p_incl = vec![0u32; m];
        let mut p_excl = vec![0u32; m];
        let mut best = Best::NONE;
        let mut ptr = 0usize;
        let t_first = t_cands[range.start];
        while ptr < sorted.len() && sorted[ptr].0 < t_first {
            add_point(&mut hist_incl, &mut hist_excl, lb[ptr], ub[ptr]);
            ptr += 1;
        }
        for ti in range {
            let t = t_cands[ti];
            while ptr < sorted.len() && sorted[ptr].0 < t {
                add_point(&mut hist_incl, &mut hist_excl, lb[ptr], ub[ptr]);
                ptr += 1;
            }
            eval_stage(
                &hist_incl, &hist_excl, &mut p_incl, &mut p_excl, u_cands, t, false, corner, n,
                vol, &mut best,
            );
            while ptr < sorted.len() && sorted[ptr].0 == t {
                add_point(&mut hist_incl, &mut hist_excl, lb[ptr], ub[ptr]);
                ptr += 1;
            }
            eval_stage(
                &hist_incl, &hist_excl, &mut p_incl, &mut p_excl, u_cands, t, true, corner, n,
                vol, &mut best,
            );
        }
        best
    };

    map_collect(exec, chunks, scan_one)
        .into_iter()
        .fold(Best::NONE, Best::merged)
}

fn max_chunks(exec: Execution) -> usize {
    match exec {
        Execution::Sequential => 1,
        Execution::Parallel => {
            #[cfg(feature = "parallel")]
            {
                rayon::current_num_threads() * 4
            }
            #[cfg(not(feature = "parallel"))]
            {
                1
            }
        }
    }
}

#[inline]
fn add_point(hist_incl: &mut [u32], hist_excl: &mut [u32], lb: u32, ub: u32) {
    let m = hist_incl.len() as u32;
    if lb < m {
        hist_incl[lb as usize] += 1;
    }
    if ub < m {
        hist_excl[ub as usize] += 1;
    }
}

#[allow(clippy::too_many_arguments)]
fn eval_stage(
    hist_incl: &[u32],
    hist_excl: &[u32],
    p_incl: &mut [u32],
    p_excl: &mut [u32],
    u_cands: &[f64],
    t: f64,
    incl_t: bool,
    corner: usize,
    n: f64,
    vol: fn(f64, f64) -> f64,
    best: &mut Best,
) {
    let mut acc_i = 0u32;
    let mut acc_e = 0u32;
    for i in 0..hist_incl.len() {
        acc_i += hist_incl[i];
        acc_e += hist_excl[i];
        p_incl[i] = acc_i;
        p_excl[i] = acc_e;
    }
    for (i, &u) in u_cands.iter().enumerate() {
        let v = vol(t, u);
        for (cnt, incl_u) in [(p_excl[i], false), (p_incl[i], true)] {
            let signed = v - cnt as f64 / n;
            let cand = Best {
                abs: signed.abs(),
                corner,
                t,
                u,
                incl_t,
                incl_u,
            };
            *best = best.merged(cand);
        }
    }
}
