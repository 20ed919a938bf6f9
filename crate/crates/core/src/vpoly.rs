//! Polytopes in vertex representation.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::hpoly::{HPolytope, LinIneq};
use crate::lp::{maximize, LpOutcome};
use crate::matrix::QMatrix;
use crate::rational::Rational;
use crate::vector::QVector;

/// The convex hull of finitely many points.
///
/// After [`VPolytope::canonicalize`] the list holds exactly the extreme
/// points of the hull, sorted lexicographically.
///
/// `PartialEq` compares representations (dimension and vertex lists), not
/// point sets.
#[derive(Clone, Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<QVector>,
    canonical: bool,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl VPolytope {
    /// Builds a V-polytope, dropping exact duplicate points.
    pub fn new(dim: usize, vertices: Vec<QVector>) -> Result<Self, PolyError> {
        if dim == 0 {
            return Err(PolyError::InvalidInput("dimension must be positive".into()));
        }
        let mut seen: Vec<QVector> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if v.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        Ok(VPolytope {
            dim,
            vertices: seen,
            canonical: false,
        })
    }

    pub(crate) fn from_canonical_vertices(dim: usize, vertices: Vec<QVector>) -> Self {
        VPolytope {
            dim,
            vertices,
            canonical: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<QVector> {
        self.vertices
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Keeps exactly the extreme points of the hull, sorted.
    pub fn canonicalize(&self) -> VPolytope {
        if self.canonical {
            return self.clone();
        }
        let mut extremes = extreme_points(self.dim, &self.vertices);
        extremes.sort();
        VPolytope::from_canonical_vertices(self.dim, extremes)
    }

    /// Exact support value `max_v c · v` over the listed points.
    pub fn support(&self, c: &QVector) -> Result<Rational, PolyError> {
        if c.dim() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: c.dim(),
            });
        }
        self.vertices
            .iter()
            .map(|v| c.dot(v))
            .max()
            .ok_or(PolyError::Infeasible)
    }

    /// The dilate `{alpha x : x in P}` for `alpha > 0`.
    pub fn scale(&self, alpha: &Rational) -> Result<VPolytope, PolyError> {
        if !alpha.is_positive() {
            return Err(PolyError::InvalidInput(
                "scale factor must be positive".into(),
            ));
        }
        Ok(VPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(alpha)).collect(),
            canonical: self.canonical,
        })
    }

    /// The reflection `P^I`: coordinates listed in `keep` (sorted, 0-based)
    /// are preserved, all others flip sign.
    pub fn reflect(&self, keep: &[usize]) -> VPolytope {
        let mut vertices: Vec<QVector> =
            self.vertices.iter().map(|v| v.reflect(keep)).collect();
        if self.canonical {
            vertices.sort();
        }
        VPolytope {
            dim: self.dim,
            vertices,
            canonical: self.canonical,
        }
    }

    /// The polar body `{z : z · x <= 1 for all x in the hull}`.
    ///
    /// The hull must contain the origin in its interior, certified by an
    /// exact affine rank check plus an LP that writes the origin as a convex
    /// combination of the vertices with all coefficients positive.
    pub fn polar(&self) -> Result<HPolytope, PolyError> {
        let vc = self.canonicalize();
        if vc.vertices.is_empty() {
            return Err(PolyError::InvalidInput(
                "polar of an empty vertex list".into(),
            ));
        }
        let n = vc.dim;
        let verts = &vc.vertices;
        let base = &verts[0];
        let diffs: Vec<Vec<Rational>> = verts[1..].iter().map(|w| w.sub(base).0).collect();
        if diffs.is_empty() || QMatrix::from_rows(diffs).rank() < n {
            return Err(PolyError::OriginNotInterior);
        }

        let nv = verts.len();
        let lpdim = nv + 1;
        let mut rows: Vec<LinIneq> = Vec::with_capacity(nv + 2 + 2 * n);
        for i in 0..nv {
            let mut coeffs = QVector::zeros(lpdim);
            coeffs[i] = -Rational::one();
            coeffs[nv] = Rational::one();
            rows.push(LinIneq::new(coeffs, Rational::zero()));
        }
        let mut ones = QVector::zeros(lpdim);
        for i in 0..nv {
            ones[i] = Rational::one();
        }
        rows.push(LinIneq::new(ones.clone(), Rational::one()));
        let mut minus_ones = ones;
        for i in 0..nv {
            minus_ones[i] = -Rational::one();
        }
        rows.push(LinIneq::new(minus_ones, -Rational::one()));
        for k in 0..n {
            let mut coeffs = QVector::zeros(lpdim);
            for (i, v) in verts.iter().enumerate() {
                coeffs[i] = v[k].clone();
            }
            let flipped = QVector(coeffs.iter().map(|c| -c.clone()).collect());
            rows.push(LinIneq::new(coeffs, Rational::zero()));
            rows.push(LinIneq::new(flipped, Rational::zero()));
        }
        let mut objective = QVector::zeros(lpdim);
        objective[nv] = Rational::one();
        let refs: Vec<&LinIneq> = rows.iter().collect();
        let threshold = Rational::zero();
        let interior = match maximize(lpdim, &refs, &objective, Some(&threshold)) {
            LpOutcome::AboveThreshold(_) | LpOutcome::Unbounded => true,
            LpOutcome::Optimal(opt) => opt.value.is_positive(),
            LpOutcome::Infeasible => false,
        };
        if !interior {
            return Err(PolyError::OriginNotInterior);
        }

        let mut out: Vec<LinIneq> = verts
            .iter()
            .map(|x| LinIneq::new(x.clone(), Rational::one()).normalized())
            .collect();
        out.sort();
        Ok(HPolytope::from_canonical_rows(n, out))
    }

    /// The image `{R x : x in P}` under an orthogonal matrix `R`.
    pub fn rotate(&self, r: &QMatrix) -> Result<VPolytope, PolyError> {
        if r.rows() != self.dim || r.cols() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: r.rows(),
            });
        }
        let mut vertices: Vec<QVector> =
            self.vertices.iter().map(|v| r.mul_vec(v)).collect();
        if self.canonical {
            vertices.sort();
        }
        Ok(VPolytope {
            dim: self.dim,
            vertices,
            canonical: self.canonical,
        })
    }
}

/// Filters a point list down to the extreme points of its convex hull.
///
/// A point is extreme iff it lies outside the hull of the others, decided
/// by an exact separation LP over the hyperplane coefficients: finding any
/// `(c, d)` with `c · v - d > 0` while `c · u <= d` for all other points
/// certifies extremality, and such an LP is unbounded whenever it is
/// feasible with positive value.
pub(crate) fn extreme_points(dim: usize, points: &[QVector]) -> Vec<QVector> {
    let mut distinct: Vec<&QVector> = Vec::with_capacity(points.len());
    for p in points {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    if distinct.len() <= 1 {
        return distinct.into_iter().cloned().collect();
    }

    let zero = Rational::zero();
    let mut out = Vec::new();
    for (idx, &candidate) in distinct.iter().enumerate() {
        let rows: Vec<LinIneq> = distinct
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, u)| {
                let mut coeffs = u.0.clone();
                coeffs.push(-Rational::one());
                LinIneq::new(QVector(coeffs), Rational::zero())
            })
            .collect();
        let refs: Vec<&LinIneq> = rows.iter().collect();
        let mut objective = candidate.0.clone();
        objective.push(-Rational::one());
        let extreme = match maximize(dim + 1, &refs, &QVector(objective), Some(&zero)) {
            LpOutcome::Unbounded | LpOutcome::AboveThreshold(_) => true,
            LpOutcome::Optimal(opt) => {
                debug_assert!(opt.value.is_zero());
                false
            }
            LpOutcome::Infeasible => false,
        };
        if extreme {
            out.push(candidate.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn new_deduplicates() {
        let v = VPolytope::new(
            2,
            alloc::vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 0]),
            ],
        )
        .unwrap();
        assert_eq!(v.vertices().len(), 2);
    }

    #[test]
    fn canonicalize_drops_hull_interior_points() {
        let v = VPolytope::new(
            2,
            alloc::vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 1]),
                QVector(alloc::vec![rat(1, 2), rat_int(0)]),
                QVector(alloc::vec![rat(1, 4), rat(1, 4)]),
            ],
        )
        .unwrap();
        let c = v.canonicalize();
        assert_eq!(
            c.vertices(),
            &[
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[1, 0]),
            ]
        );
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn canonicalize_keeps_cross_polytope_vertices() {
        let mut pts = alloc::vec![QVector::zeros(3)];
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut p = alloc::vec![0i64; 3];
                p[i] = s;
                pts.push(QVector::from_ints(&p));
            }
        }
        let c = VPolytope::new(3, pts).unwrap().canonicalize();
        assert_eq!(c.vertices().len(), 6);
        assert!(!c.vertices().contains(&QVector::zeros(3)));
    }

    #[test]
    fn unit_vectors_are_not_extreme_for_two_sparse_signs() {
        let mut pts = Vec::new();
        for i in 0..4usize {
            for j in 0..4usize {
                if i == j {
                    continue;
                }
                for si in [1i64, -1] {
                    for sj in [1i64, -1] {
                        let mut p = alloc::vec![0i64; 4];
                        p[i] = si;
                        p[j] = sj;
                        pts.push(QVector::from_ints(&p));
                    }
                }
            }
        }
        for i in 0..4usize {
            for s in [1i64, -1] {
                let mut p = alloc::vec![0i64; 4];
                p[i] = s;
                pts.push(QVector::from_ints(&p));
            }
        }
        pts.push(QVector::zeros(4));
        let c = VPolytope::new(4, pts).unwrap().canonicalize();
        assert_eq!(c.vertices().len(), 24);
        assert!(c.vertices().iter().all(|v| v.sparsity() == 2));
    }

    #[test]
    fn support_scans_vertices() {
        let v = VPolytope::new(
            2,
            alloc::vec![
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[-1, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[0, -1]),
            ],
        )
        .unwrap();
        assert_eq!(v.support(&QVector::from_ints(&[1, 1])).unwrap(), rat_int(1));
        assert_eq!(v.support(&QVector::from_ints(&[3, -2])).unwrap(), rat_int(3));
        assert!(v.support(&QVector::from_ints(&[1])).is_err());
    }

    #[test]
    fn scale_and_reflect_preserve_canonical_lists() {
        let v = VPolytope::new(
            2,
            alloc::vec![QVector::from_ints(&[1, 2]), QVector::from_ints(&[-1, 0])],
        )
        .unwrap()
        .canonicalize();
        let scaled = v.scale(&rat(1, 2)).unwrap();
        assert!(scaled.vertices().contains(&QVector(alloc::vec![rat(1, 2), rat_int(1)])));
        assert!(v.scale(&rat_int(0)).is_err());

        let reflected = v.reflect(&[0]);
        assert!(reflected.vertices().contains(&QVector::from_ints(&[1, -2])));
        assert_eq!(reflected.reflect(&[0]), v);
    }

    #[test]
    fn rotate_maps_vertices() {
        let v = VPolytope::new(
            2,
            alloc::vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
        )
        .unwrap();
        let r = QMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let rotated = v.rotate(&r).unwrap();
        assert!(rotated.vertices().contains(&QVector::from_ints(&[0, 1])));
        assert!(rotated.vertices().contains(&QVector::from_ints(&[-1, 0])));
    }
}
