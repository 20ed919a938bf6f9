//! Exact distances, supports, and directional gaps.
//!
//! Distances are computed in squared form so every quantity stays rational:
//! the nearest-point problem is solved with Wolfe's minimum-norm-point
//! algorithm in exact arithmetic, and the Hausdorff distance between nested
//! polytopes is the maximum of the per-vertex distances. Directional gaps
//! are differences of support values from the exact LP solver.
//!
//! The identity linking the two views, that the squared worst-case
//! directional gap equals the squared Hausdorff distance times the squared
//! norm of the witness direction, is checked by [`verify_dist_gap`] on the
//! exact witness plus a seeded sample of integer directions.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::convert::vertices;
use crate::error::PolyError;
use crate::hpoly::HPolytope;
use crate::lp::{solve_lp, LpResult};
use crate::matrix::QMatrix;
use crate::rational::{rat_int, Rational};
use crate::rng::RandomSource;
use crate::vector::QVector;
use crate::vpoly::VPolytope;

/// Exact squared distance between a point and a polytope, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    /// Squared Euclidean distance.
    pub sq_dist: Rational,
    /// The far point (for Hausdorff distances, a vertex of the outer set).
    pub witness_outer: QVector,
    /// The exact projection of `witness_outer` onto the inner set.
    pub witness_inner: QVector,
}

/// Support values of a nested pair in one direction, and their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRecord {
    pub direction: QVector,
    pub support_outer: Rational,
    pub support_inner: Rational,
    pub gap: Rational,
}

/// Result of checking the distance-gap identity on a nested pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCheck {
    /// The exact Hausdorff distance and its witnesses.
    pub distance: DistanceResult,
    /// The unnormalized witness direction, `witness_outer - witness_inner`.
    pub witness_direction: QVector,
    /// Whether `gap(c)^2 = sq_dist * |c|^2` holds exactly at the witness.
    pub witness_identity_holds: bool,
    /// Number of sampled directions checked against the upper bound.
    pub directions_checked: usize,
    /// Sampled directions whose gap exceeded the bound; zero in a sound run.
    pub violations: usize,
}

/// Exact nearest point of `p` to `x`, via Wolfe's minimum-norm-point
/// algorithm run on the vertex set shifted by `-x`.
pub fn nearest_point(p: &VPolytope, x: &QVector) -> Result<DistanceResult, PolyError> {
    if p.dim() != x.dim() {
        return Err(PolyError::DimensionMismatch {
            expected: p.dim(),
            got: x.dim(),
        });
    }
    if p.is_empty() {
        return Err(PolyError::Infeasible);
    }
    let shifted: Vec<QVector> = p.vertices().iter().map(|v| v.sub(x)).collect();
    let z = min_norm_point(&shifted)?;
    Ok(DistanceResult {
        sq_dist: z.norm_sq(),
        witness_inner: z.add(x),
        witness_outer: x.clone(),
    })
}

/// Minimum-norm point of the convex hull of `pts`, exactly.
///
/// Maintains a corral of affinely independent points and the representation
/// of the current iterate as a strictly positive convex combination over it.
/// Ties in the entering point are broken by lowest index, so the iteration
/// is deterministic.
fn min_norm_point(pts: &[QVector]) -> Result<QVector, PolyError> {
    let mut start = 0;
    let mut start_norm = pts[0].norm_sq();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let ns = p.norm_sq();
        if ns < start_norm {
            start = i;
            start_norm = ns;
        }
    }
    let mut corral: Vec<usize> = alloc::vec![start];
    let mut weights: Vec<Rational> = alloc::vec![Rational::one()];
    let mut x = pts[start].clone();
    loop {
        let xx = x.norm_sq();
        let mut entering = 0;
        let mut lowest = x.dot(&pts[0]);
        for (j, p) in pts.iter().enumerate().skip(1) {
            let d = x.dot(p);
            if d < lowest {
                lowest = d;
                entering = j;
            }
        }
        if lowest >= xx {
            return Ok(x);
        }
        if corral.contains(&entering) {
            return Err(PolyError::Internal("min-norm corral stalled"));
        }
        corral.push(entering);
        weights.push(Rational::zero());
        loop {
            let affine = affine_min_norm_coords(pts, &corral)?;
            if affine.iter().all(|a| a.is_positive()) {
                x = combine(pts, &corral, &affine);
                weights = affine;
                break;
            }
            // Walk from the current convex weights toward the affine
            // minimizer until some weight hits zero, then drop those points.
            let mut theta = Rational::one();
            for (w, a) in weights.iter().zip(affine.iter()) {
                if !a.is_positive() {
                    let limit = w / &(w - a);
                    if limit < theta {
                        theta = limit;
                    }
                }
            }
            if theta.is_zero() {
                return Err(PolyError::Internal("min-norm line search stalled"));
            }
            let one_minus = Rational::one() - &theta;
            let mut next_corral = Vec::with_capacity(corral.len());
            let mut next_weights = Vec::with_capacity(corral.len());
            for (idx, (w, a)) in corral.iter().zip(weights.iter().zip(affine.iter())) {
                let mixed = &one_minus * w + &theta * a;
                if mixed.is_positive() {
                    next_corral.push(*idx);
                    next_weights.push(mixed);
                }
            }
            if next_corral.len() >= corral.len() {
                return Err(PolyError::Internal("min-norm drop made no progress"));
            }
            corral = next_corral;
            weights = next_weights;
        }
    }
}

/// Coordinates of the minimum-norm point of the affine hull of the corral,
/// expressed over the corral points. Solves the bordered Gram system, which
/// is nonsingular because the corral stays affinely independent.
fn affine_min_norm_coords(pts: &[QVector], corral: &[usize]) -> Result<Vec<Rational>, PolyError> {
    let s = corral.len();
    if s == 1 {
        return Ok(alloc::vec![Rational::one()]);
    }
    let mut m = QMatrix::zeros(s + 1, s + 1);
    for j in 0..s {
        *m.at_mut(0, j + 1) = Rational::one();
        *m.at_mut(j + 1, 0) = Rational::one();
    }
    for i in 0..s {
        for j in i..s {
            let g = pts[corral[i]].dot(&pts[corral[j]]);
            *m.at_mut(i + 1, j + 1) = g.clone();
            *m.at_mut(j + 1, i + 1) = g;
        }
    }
    let inv = m
        .inverse()
        .ok_or(PolyError::Internal("degenerate corral in min-norm point"))?;
    let mut rhs = QVector::zeros(s + 1);
    rhs[0] = Rational::one();
    let sol = inv.mul_vec(&rhs);
    Ok(sol.iter().skip(1).cloned().collect())
}

fn combine(pts: &[QVector], corral: &[usize], weights: &[Rational]) -> QVector {
    let mut out = QVector::zeros(pts[corral[0]].dim());
    for (idx, w) in corral.iter().zip(weights.iter()) {
        out = out.add(&pts[*idx].scale(w));
    }
    out
}

/// Exact squared Hausdorff distance from `outer` to `inner`, defined for
/// nested pairs only: the farthest point of `outer` from `inner` is a vertex
/// of `outer`, so the maximum of the per-vertex nearest-point distances is
/// exact. Ties are resolved toward the lexicographically first vertex.
pub fn hausdorff_sq(inner: &HPolytope, outer: &HPolytope) -> Result<DistanceResult, PolyError> {
    if inner.dim() != outer.dim() {
        return Err(PolyError::DimensionMismatch {
            expected: outer.dim(),
            got: inner.dim(),
        });
    }
    if !outer.contains_set(inner) {
        return Err(PolyError::InvalidInput(
            "Hausdorff distance is defined for nested pairs: inner must lie inside outer".into(),
        ));
    }
    let outer_verts = vertices(outer)?;
    let inner_verts = vertices(inner)?;
    let mut best: Option<DistanceResult> = None;
    for x in outer_verts.vertices() {
        let r = nearest_point(&inner_verts, x)?;
        let better = match &best {
            None => true,
            Some(b) => r.sq_dist > b.sq_dist,
        };
        if better {
            best = Some(r);
        }
    }
    best.ok_or(PolyError::Infeasible)
}

/// Support value `max { c . x : x in p }`.
pub fn support(p: &HPolytope, c: &QVector) -> Result<Rational, PolyError> {
    match solve_lp(p, c)? {
        LpResult::Optimal(opt) => Ok(opt.value),
        LpResult::Infeasible => Err(PolyError::Infeasible),
        LpResult::Unbounded => Err(PolyError::Unbounded),
    }
}

/// Directional gap between the support values of a nested pair.
pub fn gap(inner: &HPolytope, outer: &HPolytope, c: &QVector) -> Result<GapRecord, PolyError> {
    let support_outer = support(outer, c)?;
    let support_inner = support(inner, c)?;
    let gap = &support_outer - &support_inner;
    Ok(GapRecord {
        direction: c.clone(),
        support_outer,
        support_inner,
        gap,
    })
}

/// Checks the equivalence of the Hausdorff distance and the worst-case
/// directional gap on a nested pair, in exact arithmetic.
///
/// Certifies that `gap(c)^2 = sq_dist * |c|^2` at the unnormalized witness
/// direction `c = witness_outer - witness_inner`, and that
/// `gap(c')^2 <= sq_dist * |c'|^2` for `samples` seeded random integer
/// directions with entries in `[-9, 9]`. Each sample is drawn from its own
/// substream, so reports are reproducible for a given seed regardless of
/// evaluation order.
pub fn verify_dist_gap(
    inner: &HPolytope,
    outer: &HPolytope,
    samples: usize,
    seed: u64,
) -> Result<GapCheck, PolyError> {
    let distance = hausdorff_sq(inner, outer)?;
    let witness_direction = distance.witness_outer.sub(&distance.witness_inner);
    let witness_identity_holds = if witness_direction.is_zero() {
        distance.sq_dist.is_zero()
    } else {
        let g = gap(inner, outer, &witness_direction)?;
        &g.gap * &g.gap == &distance.sq_dist * &witness_direction.norm_sq()
    };
    let root = RandomSource::new(seed);
    let n = inner.dim();
    let mut violations = 0;
    for sample in 0..samples {
        let mut rng = root.substream(sample as u64);
        let c = loop {
            let candidate = QVector(
                (0..n).map(|_| rat_int(rng.int_in(-9, 9))).collect(),
            );
            if !candidate.is_zero() {
                break candidate;
            }
        };
        let g = gap(inner, outer, &c)?;
        if &g.gap * &g.gap > &distance.sq_dist * &c.norm_sq() {
            violations += 1;
        }
    }
    Ok(GapCheck {
        distance,
        witness_direction,
        witness_identity_holds,
        directions_checked: samples,
        violations,
    })
}
