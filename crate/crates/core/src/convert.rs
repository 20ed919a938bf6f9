//! Conversion between inequality and vertex representations, and polarity.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::hpoly::{HPolytope, LinIneq};
use crate::lp::{solve_lp, LpResult};
use crate::matrix::QMatrix;
use crate::rational::{rat_int, Rational};
use crate::vector::QVector;
use crate::vpoly::VPolytope;

/// Hard cap on the ambient dimension for vertex enumeration; the sweep
/// starts from the 2^dim corners of a bounding box.
const MAX_ENUM_DIM: usize = 16;

/// Enumerates the vertices of a bounded, feasible H-polytope exactly.
///
/// Starts from a bounding box computed by LP (which certifies boundedness)
/// and cuts with one inequality at a time: vertices strictly inside survive,
/// and each cut edge contributes its exact crossing point. Edges are found
/// with the combinatorial adjacency test on tight constraint sets.
pub fn vertices(p: &HPolytope) -> Result<VPolytope, PolyError> {
    let n = p.dim();
    if n > MAX_ENUM_DIM {
        return Err(PolyError::ResourceRefusal(alloc::format!(
            "vertex enumeration needs 2^dim seed corners; dim {n} exceeds the cap of {MAX_ENUM_DIM}"
        )));
    }

    let mut hi = Vec::with_capacity(n);
    let mut lo = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = QVector::zeros(n);
        c[i] = Rational::one();
        match solve_lp(p, &c)? {
            LpResult::Optimal(opt) => hi.push(&opt.value + rat_int(1)),
            LpResult::Infeasible => return Err(PolyError::Infeasible),
            LpResult::Unbounded => return Err(PolyError::Unbounded),
        }
        c[i] = -Rational::one();
        match solve_lp(p, &c)? {
            LpResult::Optimal(opt) => lo.push(-&opt.value - rat_int(1)),
            LpResult::Infeasible => return Err(PolyError::Infeasible),
            LpResult::Unbounded => return Err(PolyError::Unbounded),
        }
    }

    let mut rows: Vec<LinIneq> = p
        .ineqs()
        .iter()
        .filter(|r| !r.a.is_zero())
        .map(LinIneq::normalized)
        .collect();
    rows.sort();
    rows.dedup_by(|next, prev| next.a == prev.a && next.b >= prev.b);

    let total = 2 * n + rows.len();
    let words = total.div_ceil(64);
    let mut verts: Vec<QVector> = Vec::with_capacity(1 << n);
    let mut tights: Vec<TightSet> = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let mut corner = Vec::with_capacity(n);
        let mut tight = TightSet::new(words);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                corner.push(hi[i].clone());
                tight.insert(2 * i);
            } else {
                corner.push(lo[i].clone());
                tight.insert(2 * i + 1);
            }
        }
        verts.push(QVector(corner));
        tights.push(tight);
    }

    for (j, row) in rows.iter().enumerate() {
        let cidx = 2 * n + j;
        let slacks: Vec<Rational> = verts.iter().map(|v| &row.b - row.a.dot(v)).collect();
        let mut pos = Vec::new();
        let mut zero = Vec::new();
        let mut neg = Vec::new();
        for (i, s) in slacks.iter().enumerate() {
            if s.is_positive() {
                pos.push(i);
            } else if s.is_zero() {
                zero.push(i);
            } else {
                neg.push(i);
            }
        }
        if neg.is_empty() {
            for &i in &zero {
                tights[i].insert(cidx);
            }
            continue;
        }

        let mut cut_verts = Vec::new();
        let mut cut_tights = Vec::new();
        for &u in &pos {
            for &w in &neg {
                let common = tights[u].intersect(&tights[w]);
                if (common.count() as usize) + 1 < n {
                    continue;
                }
                let blocked = (0..verts.len())
                    .any(|x| x != u && x != w && common.is_subset_of(&tights[x]));
                if blocked {
                    continue;
                }
                let theta = &slacks[u] / (&slacks[u] - &slacks[w]);
                let point = verts[u].add(&verts[w].sub(&verts[u]).scale(&theta));
                let mut tight = common;
                tight.insert(cidx);
                cut_verts.push(point);
                cut_tights.push(tight);
            }
        }

        let mut next_verts = Vec::with_capacity(pos.len() + zero.len() + cut_verts.len());
        let mut next_tights = Vec::with_capacity(next_verts.capacity());
        for &i in &pos {
            next_verts.push(core::mem::replace(&mut verts[i], QVector(Vec::new())));
            next_tights.push(core::mem::replace(&mut tights[i], TightSet::new(0)));
        }
        for &i in &zero {
            let mut t = core::mem::replace(&mut tights[i], TightSet::new(0));
            t.insert(cidx);
            next_verts.push(core::mem::replace(&mut verts[i], QVector(Vec::new())));
            next_tights.push(t);
        }
        next_verts.append(&mut cut_verts);
        next_tights.append(&mut cut_tights);
        debug_assert!(!next_verts.is_empty());
        verts = next_verts;
        tights = next_tights;
    }

    verts.sort();
    Ok(VPolytope::from_canonical_vertices(n, verts))
}

/// Computes the facet description of the hull of a vertex list.
///
/// The hull must be full-dimensional. Vertices are first reduced to extreme
/// points, the polytope is centered on its vertex centroid, and the facets
/// are read off as the vertices of the polar body.
pub fn facets(v: &VPolytope) -> Result<HPolytope, PolyError> {
    if v.is_empty() {
        return Err(PolyError::InvalidInput(
            "facet computation needs at least one vertex".into(),
        ));
    }
    let vc = v.canonicalize();
    let n = vc.dim();
    let verts = vc.vertices();

    let base = &verts[0];
    let diffs: Vec<Vec<Rational>> = verts[1..]
        .iter()
        .map(|w| w.sub(base).0)
        .collect();
    if diffs.is_empty() || QMatrix::from_rows(diffs).rank() < n {
        return Err(PolyError::Degenerate);
    }

    let count = rat_int(verts.len() as i64);
    let mut centroid = QVector::zeros(n);
    for w in verts {
        centroid = centroid.add(w);
    }
    let centroid = centroid.scale(&count.recip());

    let polar_rows: Vec<LinIneq> = verts
        .iter()
        .map(|w| LinIneq::new(w.sub(&centroid), Rational::one()))
        .collect();
    let polar_poly = HPolytope::new(n, polar_rows)?;
    let normals = vertices(&polar_poly)?;

    let mut rows: Vec<LinIneq> = normals
        .vertices()
        .iter()
        .map(|u| LinIneq::new(u.clone(), Rational::one() + u.dot(&centroid)).normalized())
        .collect();
    rows.sort();
    Ok(HPolytope::from_canonical_rows(n, rows))
}

/// The polar body `{z : z · x <= 1 for all x in P}` of an H-polytope whose
/// interior contains the origin.
pub fn polar(p: &HPolytope) -> Result<HPolytope, PolyError> {
    let pc = p.canonicalize();
    if pc.is_empty_marker() {
        return Err(PolyError::Infeasible);
    }
    if !pc.ineqs().iter().all(|r| r.b.is_positive()) {
        return Err(PolyError::OriginNotInterior);
    }
    let v = vertices(&pc)?;
    let mut rows: Vec<LinIneq> = v
        .vertices()
        .iter()
        .map(|x| LinIneq::new(x.clone(), Rational::one()).normalized())
        .collect();
    rows.sort();
    Ok(HPolytope::from_canonical_rows(pc.dim(), rows))
}

/// Fixed-width bit set indexing the constraints tight at a vertex.
#[derive(Clone)]
struct TightSet {
    words: Vec<u64>,
}

impl TightSet {
    fn new(words: usize) -> Self {
        TightSet {
            words: alloc::vec![0; words],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &TightSet) -> TightSet {
        TightSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::equal;
    use crate::rational::rat;

    fn simplex_p12() -> HPolytope {
        HPolytope::unit_box(2)
            .intersect(&HPolytope::new(2, alloc::vec![LinIneq::from_ints(&[1, 1], 1)]).unwrap())
            .unwrap()
    }

    fn sign_rows(n: usize, b: i64) -> Vec<LinIneq> {
        (0..(1u64 << n))
            .map(|mask| {
                let coeffs: Vec<i64> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                LinIneq::from_ints(&coeffs, b)
            })
            .collect()
    }

    #[test]
    fn vertices_of_unit_simplex() {
        let v = vertices(&simplex_p12()).unwrap();
        assert_eq!(
            v.vertices(),
            &[
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[1, 0]),
            ]
        );
        assert!(v.is_canonical());
    }

    #[test]
    fn vertices_of_cross_polytope() {
        let p = HPolytope::new(2, sign_rows(2, 1)).unwrap();
        let v = vertices(&p).unwrap();
        assert_eq!(
            v.vertices(),
            &[
                QVector::from_ints(&[-1, 0]),
                QVector::from_ints(&[0, -1]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[1, 0]),
            ]
        );
    }

    #[test]
    fn vertices_of_box_are_corners() {
        let v = vertices(&HPolytope::symmetric_box(3, &rat_int(1))).unwrap();
        assert_eq!(v.vertices().len(), 8);
        assert!(v.vertices().iter().all(|x| x.norm_sq() == rat_int(3)));
    }

    #[test]
    fn vertices_of_two_sparse_sign_polytope() {
        let mut rows = sign_rows(4, 2);
        rows.extend(HPolytope::symmetric_box(4, &rat_int(1)).into_ineqs());
        let p = HPolytope::new(4, rows).unwrap();
        let v = vertices(&p).unwrap();
        assert_eq!(v.vertices().len(), 24);
        assert!(v
            .vertices()
            .iter()
            .all(|x| x.sparsity() == 2 && x.norm_sq() == rat_int(2)));
    }

    #[test]
    fn vertices_of_single_point() {
        let p = HPolytope::new(
            2,
            alloc::vec![
                LinIneq::from_ints(&[2, 0], 1),
                LinIneq::from_ints(&[-2, 0], -1),
                LinIneq::from_ints(&[0, 3], 1),
                LinIneq::from_ints(&[0, -3], -1),
            ],
        )
        .unwrap();
        let v = vertices(&p).unwrap();
        assert_eq!(v.vertices(), &[QVector(alloc::vec![rat(1, 2), rat(1, 3)])]);
    }

    #[test]
    fn vertices_reports_unbounded_and_infeasible() {
        let ray = HPolytope::new(1, alloc::vec![LinIneq::from_ints(&[-1], 0)]).unwrap();
        assert!(matches!(vertices(&ray), Err(PolyError::Unbounded)));
        assert!(matches!(
            vertices(&HPolytope::empty(2)),
            Err(PolyError::Infeasible)
        ));
    }

    #[test]
    fn facets_round_trips_simplex() {
        let p = simplex_p12();
        let back = facets(&vertices(&p).unwrap()).unwrap();
        assert_eq!(back, p.canonicalize());
    }

    #[test]
    fn facets_round_trips_cross_polytope() {
        let p = HPolytope::new(3, sign_rows(3, 1)).unwrap();
        let back = facets(&vertices(&p).unwrap()).unwrap();
        assert_eq!(back, p.canonicalize());
        assert!(equal(&back, &p));
    }

    #[test]
    fn facets_from_raw_point_cloud() {
        let v = VPolytope::new(
            2,
            alloc::vec![
                QVector::from_ints(&[0, 0]),
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 1]),
                QVector(alloc::vec![rat(1, 3), rat(1, 3)]),
            ],
        )
        .unwrap();
        let h = facets(&v).unwrap();
        assert_eq!(h, simplex_p12().canonicalize());
    }

    #[test]
    fn facets_rejects_degenerate_hulls() {
        let segment = VPolytope::new(
            2,
            alloc::vec![QVector::from_ints(&[0, 0]), QVector::from_ints(&[1, 1])],
        )
        .unwrap();
        assert!(matches!(facets(&segment), Err(PolyError::Degenerate)));
        let point = VPolytope::new(2, alloc::vec![QVector::from_ints(&[1, 0])]).unwrap();
        assert!(matches!(facets(&point), Err(PolyError::Degenerate)));
    }

    #[test]
    fn polar_of_box_is_cross_polytope() {
        let box2 = HPolytope::symmetric_box(2, &rat_int(1));
        let cross = HPolytope::new(2, sign_rows(2, 1)).unwrap();
        let got = polar(&box2).unwrap();
        assert_eq!(got, cross.canonicalize());
    }

    #[test]
    fn polar_is_an_involution() {
        let mut rows = sign_rows(4, 2);
        rows.extend(HPolytope::symmetric_box(4, &rat_int(1)).into_ineqs());
        let p = HPolytope::new(4, rows).unwrap().canonicalize();
        assert_eq!(polar(&polar(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn polar_respects_scaling() {
        let box2 = HPolytope::symmetric_box(2, &rat_int(1));
        let lhs = polar(&box2.scale(&rat_int(2)).unwrap()).unwrap();
        let cross = HPolytope::new(2, sign_rows(2, 1)).unwrap();
        let rhs = cross.canonicalize().scale(&rat(1, 2)).unwrap();
        assert!(equal(&lhs, &rhs));
    }

    #[test]
    fn polar_requires_origin_interior() {
        assert!(matches!(
            polar(&simplex_p12()),
            Err(PolyError::OriginNotInterior)
        ));
        assert!(matches!(
            polar(&HPolytope::empty(2)),
            Err(PolyError::Infeasible)
        ));
    }

    #[test]
    fn vpolytope_polar_matches_hpolytope_polar() {
        let box2 = HPolytope::symmetric_box(2, &rat_int(1));
        let corners = vertices(&box2).unwrap();
        assert_eq!(corners.polar().unwrap(), polar(&box2).unwrap());
        let segment = VPolytope::new(
            2,
            alloc::vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[-1, 0])],
        )
        .unwrap();
        assert!(matches!(
            segment.polar(),
            Err(PolyError::OriginNotInterior)
        ));
    }

    #[test]
    fn refuses_oversized_enumeration() {
        let p = HPolytope::unit_box(17);
        assert!(matches!(
            vertices(&p),
            Err(PolyError::ResourceRefusal(_))
        ));
    }
}
