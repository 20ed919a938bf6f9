//! Sparse closures, budgeted closures, and symmetrization.
//!
//! The k-sparse closure of a polytope is the intersection of all valid
//! inequalities with at most k nonzero coefficients. It is computed exactly
//! by projecting onto every k-subset of the coordinates, lifting each
//! projection back to the ambient space, and intersecting. The budgeted
//! closure additionally intersects with a fixed set of certified cuts.
//!
//! Symmetrization maps a polytope in the nonnegative orthant to the convex
//! hull of all its signed reflections. When the input has a description with
//! nonnegative coefficients the reflections can be written down directly;
//! otherwise the hull is built from reflected vertex sets.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::convert::{facets, vertices};
use crate::error::PolyError;
use crate::hpoly::{HPolytope, LinIneq};
use crate::lp::{maximize, LpOutcome};
use crate::project::project;
use crate::rational::{format_rational, Rational};
use crate::subsets::{all_subsets, k_subsets};
use crate::vector::QVector;
use crate::vpoly::VPolytope;

/// Validated sparsity level for a closure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureSpec {
    dim: usize,
    k: usize,
}

impl ClosureSpec {
    /// Checks `1 <= k <= dim`.
    pub fn new(dim: usize, k: usize) -> Result<Self, PolyError> {
        if dim == 0 {
            return Err(PolyError::InvalidInput(
                "dimension must be positive".into(),
            ));
        }
        if k == 0 || k > dim {
            return Err(PolyError::InvalidInput(
                "sparsity k must satisfy 1 <= k <= n".into(),
            ));
        }
        Ok(ClosureSpec { dim, k })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sparsity level.
    pub fn k(&self) -> usize {
        self.k
    }
}

/// A set of cuts certified valid for a reference polytope.
///
/// Construction runs one LP per cut against the reference; the certificate
/// travels with the value, so consumers such as [`budgeted_closure`] do not
/// re-verify. Certify against the same polytope the cuts will be used with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    dim: usize,
    cuts: Vec<LinIneq>,
    label: String,
}

impl CutSet {
    /// Certifies that every cut is valid for `reference` (its maximum over
    /// the polytope does not exceed the right-hand side). The first violated
    /// cut aborts construction and is named in the error.
    pub fn certify(
        reference: &HPolytope,
        cuts: Vec<LinIneq>,
        label: &str,
    ) -> Result<Self, PolyError> {
        let dim = reference.dim();
        let canon = reference.canonicalize();
        let rows: Vec<&LinIneq> = canon.ineqs().iter().collect();
        for (index, cut) in cuts.iter().enumerate() {
            if cut.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    got: cut.dim(),
                });
            }
            let valid = match maximize(dim, &rows, &cut.a, Some(&cut.b)) {
                LpOutcome::Optimal(opt) => opt.value <= cut.b,
                LpOutcome::Infeasible => true,
                LpOutcome::Unbounded | LpOutcome::AboveThreshold(_) => false,
            };
            if !valid {
                return Err(PolyError::InvalidCut {
                    index,
                    cut: describe_cut(cut),
                });
            }
        }
        Ok(CutSet {
            dim,
            cuts,
            label: label.into(),
        })
    }

    /// Ambient dimension of the cuts.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The certified cuts.
    pub fn cuts(&self) -> &[LinIneq] {
        &self.cuts
    }

    /// Free-text label carried along for reports.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of cuts.
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    /// Whether the set has no cuts.
    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}

fn describe_cut(cut: &LinIneq) -> String {
    let mut s = String::new();
    for (i, v) in cut.a.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&format_rational(v));
    }
    s.push_str(" <= ");
    s.push_str(&format_rational(&cut.b));
    s
}

/// The k-sparse closure: the intersection of all valid inequalities of `p`
/// with at most `k` nonzero coefficients.
///
/// Computed by projecting onto each k-subset of coordinates in lexicographic
/// order, lifting the projections back, and canonicalizing the combined
/// system. Requires `p` bounded and `1 <= k <= n`; `k = n` returns the
/// canonical form of `p` itself.
pub fn sparse_closure(p: &HPolytope, k: usize) -> Result<HPolytope, PolyError> {
    let n = p.dim();
    ClosureSpec::new(n, k)?;
    if k == n {
        return Ok(p.canonicalize());
    }
    let mut rows: Vec<LinIneq> = Vec::new();
    for subset in k_subsets(n, k) {
        let q = project(p, &subset)?;
        if q.is_empty_marker() {
            return Ok(HPolytope::empty(n));
        }
        for row in q.ineqs() {
            rows.push(lift_row(row, &subset, n));
        }
    }
    rows.sort();
    rows.dedup();
    Ok(HPolytope::new(n, rows)?.canonicalize())
}

/// Embeds a row over the coordinates `subset` into dimension `n`.
fn lift_row(row: &LinIneq, subset: &[usize], n: usize) -> LinIneq {
    let mut a = QVector::zeros(n);
    for (j, &i) in subset.iter().enumerate() {
        a[i] = row.a[j].clone();
    }
    LinIneq::new(a, row.b.clone())
}

/// The budgeted closure: the k-sparse closure intersected with the cuts of
/// `d`. The cut set must have been certified against `p`.
pub fn budgeted_closure(p: &HPolytope, k: usize, d: &CutSet) -> Result<HPolytope, PolyError> {
    if d.dim() != p.dim() {
        return Err(PolyError::DimensionMismatch {
            expected: p.dim(),
            got: d.dim(),
        });
    }
    let closure = sparse_closure(p, k)?;
    if d.is_empty() {
        return Ok(closure);
    }
    let cuts = HPolytope::new(p.dim(), d.cuts().to_vec())?;
    closure.intersect(&cuts)
}

/// The symmetrization of a polytope in the nonnegative orthant: the convex
/// hull of all its signed reflections.
///
/// When every canonical row either has nonnegative coefficients or is a
/// lower bound implied by the orthant, the result is obtained by reflecting
/// the rows directly. Otherwise the hull of the reflected vertex sets is
/// computed; that path requires the result to be full-dimensional, so `p`
/// must not lie inside a coordinate hyperplane.
pub fn symmetrize(p: &HPolytope) -> Result<HPolytope, PolyError> {
    let n = p.dim();
    let pc = p.canonicalize();
    if pc.is_empty_marker() {
        return Ok(pc);
    }
    let rows: Vec<&LinIneq> = pc.ineqs().iter().collect();
    for i in 0..n {
        let mut c = QVector::zeros(n);
        c[i] = -Rational::one();
        let inside = match maximize(n, &rows, &c, Some(&Rational::zero())) {
            LpOutcome::Optimal(opt) => !opt.value.is_positive(),
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded | LpOutcome::AboveThreshold(_) => false,
        };
        if !inside {
            return Err(PolyError::InvalidInput(
                "symmetrization requires a polytope inside the nonnegative orthant".into(),
            ));
        }
    }
    if let Some(reflectable) = fast_path_rows(&pc) {
        let mut out: Vec<LinIneq> = Vec::new();
        for keep in all_subsets(n) {
            for row in &reflectable {
                out.push(LinIneq::new(row.a.reflect(&keep), row.b.clone()));
            }
        }
        out.sort();
        out.dedup();
        return Ok(HPolytope::new(n, out)?.canonicalize());
    }
    symmetrize_generic(&pc)
}

/// Rows eligible for direct reflection: every canonical row must either have
/// all-nonnegative coefficients (kept) or be a coordinate lower bound made
/// redundant by the orthant (dropped). Returns `None` when some row is
/// neither, which forces the vertex-based path.
fn fast_path_rows(pc: &HPolytope) -> Option<Vec<LinIneq>> {
    let mut kept = Vec::new();
    for row in pc.ineqs() {
        if row.a.iter().all(|v| !v.is_negative()) {
            kept.push(row.clone());
            continue;
        }
        let nonzero = row.a.iter().filter(|v| !v.is_zero()).count();
        let axis_lower_bound = nonzero == 1 && !row.b.is_negative();
        if !axis_lower_bound {
            return None;
        }
    }
    Some(kept)
}

/// Hull-of-reflections fallback: enumerate the vertices of `pc`, reflect
/// them under every sign pattern, and convert back to inequalities.
fn symmetrize_generic(pc: &HPolytope) -> Result<HPolytope, PolyError> {
    let n = pc.dim();
    let verts = vertices(pc)?;
    let mut points: Vec<QVector> = Vec::new();
    for keep in all_subsets(n) {
        for v in verts.vertices() {
            points.push(v.reflect(&keep));
        }
    }
    points.sort();
    points.dedup();
    facets(&VPolytope::new(n, points)?)
}

/// Whether `p` is down-monotone: closed under decreasing any coordinate
/// toward zero. Requires `p` bounded, nonempty, and inside the nonnegative
/// orthant. Checked on the finite certificate: every vertex with any single
/// coordinate zeroed must remain in `p`.
pub fn is_down_monotone(p: &HPolytope) -> Result<bool, PolyError> {
    let verts = vertices(p)?;
    for v in verts.vertices() {
        if v.iter().any(|x| x.is_negative()) {
            return Err(PolyError::InvalidInput(
                "down-monotonicity is defined inside the nonnegative orthant".into(),
            ));
        }
    }
    for v in verts.vertices() {
        for i in 0..p.dim() {
            if v[i].is_zero() {
                continue;
            }
            let mut w = v.clone();
            w[i] = Rational::zero();
            if !p.contains(&w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_qn, make_simplex_family, make_symmetric_closure, make_symmetric_family};
    use crate::hpoly::equal;
    use crate::rational::rat_int;
    use num_traits::One;

    #[test]
    fn closure_spec_validates_range() {
        assert!(ClosureSpec::new(3, 1).is_ok());
        assert!(ClosureSpec::new(3, 3).is_ok());
        assert!(ClosureSpec::new(3, 0).is_err());
        assert!(ClosureSpec::new(3, 4).is_err());
        assert!(ClosureSpec::new(0, 1).is_err());
    }

    #[test]
    fn sparse_closure_unit_budget_sparsity_one_is_box() {
        let p = make_simplex_family(1, 2).unwrap();
        let c = sparse_closure(&p, 1).unwrap();
        assert!(equal(&c, &HPolytope::unit_box(2)));
    }

    #[test]
    fn sparse_closure_full_sparsity_is_input() {
        let p = make_simplex_family(1, 2).unwrap();
        let c = sparse_closure(&p, 2).unwrap();
        assert!(equal(&c, &p));
    }

    #[test]
    fn sparse_closure_half_budget_is_box() {
        let p = make_simplex_family(2, 4).unwrap();
        for k in 1..=2 {
            let c = sparse_closure(&p, k).unwrap();
            assert!(equal(&c, &HPolytope::unit_box(4)));
        }
    }

    #[test]
    fn sparse_closure_matches_symmetric_display() {
        let sym = make_symmetric_family(1, 3).unwrap();
        let c = sparse_closure(&sym, 2).unwrap();
        let display = make_symmetric_closure(1, 3, 2).unwrap();
        assert!(equal(&c, &display));
    }

    #[test]
    fn sparse_closure_rejects_bad_sparsity() {
        let p = make_simplex_family(1, 2).unwrap();
        assert!(sparse_closure(&p, 0).is_err());
        assert!(sparse_closure(&p, 3).is_err());
    }

    #[test]
    fn sparse_closure_of_empty_is_empty() {
        let c = sparse_closure(&HPolytope::empty(3), 2).unwrap();
        assert!(c.is_empty_marker());
    }

    #[test]
    fn cutset_certifies_valid_cuts() {
        let p = make_simplex_family(2, 4).unwrap();
        let dense = LinIneq::from_ints(&[1, 1, 1, 1], 2);
        let d = CutSet::certify(&p, alloc::vec![dense], "dense").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.label(), "dense");
    }

    #[test]
    fn cutset_rejects_violated_cut_by_index() {
        let p = make_simplex_family(2, 4).unwrap();
        let valid = LinIneq::from_ints(&[1, 1, 1, 1], 2);
        let violated = LinIneq::from_ints(&[1, 1, 1, 1], 1);
        let err = CutSet::certify(&p, alloc::vec![valid, violated], "d").unwrap_err();
        match err {
            PolyError::InvalidCut { index, cut } => {
                assert_eq!(index, 1);
                assert!(cut.ends_with("<= 1"));
            }
            other => panic!("expected InvalidCut, got {other:?}"),
        }
    }

    #[test]
    fn budgeted_closure_with_empty_cutset_is_sparse_closure() {
        let p = make_simplex_family(2, 4).unwrap();
        let d = CutSet::certify(&p, alloc::vec![], "none").unwrap();
        let b = budgeted_closure(&p, 2, &d).unwrap();
        let c = sparse_closure(&p, 2).unwrap();
        assert!(equal(&b, &c));
    }

    #[test]
    fn budgeted_closure_dense_cut_recovers_input() {
        let p = make_simplex_family(2, 4).unwrap();
        let dense = LinIneq::from_ints(&[1, 1, 1, 1], 2);
        let d = CutSet::certify(&p, alloc::vec![dense], "dense").unwrap();
        for k in 1..=2 {
            let b = budgeted_closure(&p, k, &d).unwrap();
            assert!(equal(&b, &p));
        }
    }

    #[test]
    fn budgeted_closure_strictly_between() {
        let sym = make_symmetric_family(2, 4).unwrap();
        let dense = LinIneq::from_ints(&[1, 1, 1, 1], 2);
        let d = CutSet::certify(&sym, alloc::vec![dense], "dense").unwrap();
        let b = budgeted_closure(&sym, 2, &d).unwrap();
        let c = sparse_closure(&sym, 2).unwrap();
        assert!(b.contains(&QVector::from_ints(&[1, 1, -1, -1])));
        assert!(!equal(&b, &c));
        assert!(c.contains_set(&b));
        assert!(b.contains_set(&sym));
    }

    #[test]
    fn symmetrize_simplex_is_cross_polytope() {
        let p = make_simplex_family(1, 2).unwrap();
        let s = symmetrize(&p).unwrap();
        assert!(equal(&s, &make_symmetric_family(1, 2).unwrap()));
    }

    #[test]
    fn symmetrize_matches_display_family() {
        for (t, n) in [(1usize, 3usize), (2, 3), (3, 3), (2, 4)] {
            let p = make_simplex_family(t, n).unwrap();
            let s = symmetrize(&p).unwrap();
            assert!(equal(&s, &make_symmetric_family(t, n).unwrap()));
        }
    }

    #[test]
    fn symmetrize_unit_box_is_symmetric_box() {
        let s = symmetrize(&HPolytope::unit_box(3)).unwrap();
        assert!(equal(&s, &HPolytope::symmetric_box(3, &rat_int(1))));
    }

    #[test]
    fn symmetrize_rejects_polytope_leaving_orthant() {
        let p = HPolytope::symmetric_box(2, &rat_int(1));
        assert!(symmetrize(&p).is_err());
    }

    #[test]
    fn symmetrize_mixed_rows_falls_back_to_generic() {
        let tri = HPolytope::new(
            2,
            alloc::vec![
                LinIneq::from_ints(&[0, -1], 0),
                LinIneq::from_ints(&[1, 0], 1),
                LinIneq::from_ints(&[-1, 1], 0),
            ],
        )
        .unwrap();
        assert!(fast_path_rows(&tri.canonicalize()).is_none());
        let s = symmetrize(&tri).unwrap();
        assert!(equal(&s, &HPolytope::symmetric_box(2, &rat_int(1))));
    }

    #[test]
    fn symmetrize_generic_agrees_with_fast_path() {
        for (t, n) in [(1usize, 2usize), (2, 3)] {
            let pc = make_simplex_family(t, n).unwrap();
            let fast = symmetrize(&pc).unwrap();
            let generic = symmetrize_generic(&pc).unwrap();
            assert!(equal(&fast, &generic));
        }
    }

    #[test]
    fn symmetrize_of_empty_is_empty() {
        let s = symmetrize(&HPolytope::empty(2)).unwrap();
        assert!(s.is_empty_marker());
    }

    #[test]
    fn down_monotone_families() {
        assert!(is_down_monotone(&make_simplex_family(2, 3).unwrap()).unwrap());
        assert!(is_down_monotone(&HPolytope::unit_box(3)).unwrap());
        assert!(is_down_monotone(&make_qn(4).unwrap()).unwrap());
    }

    #[test]
    fn segment_is_not_down_monotone() {
        let seg = HPolytope::new(
            2,
            alloc::vec![
                LinIneq::from_ints(&[1, 1], 1),
                LinIneq::from_ints(&[-1, -1], -1),
                LinIneq::from_ints(&[-1, 0], 0),
                LinIneq::from_ints(&[0, -1], 0),
            ],
        )
        .unwrap();
        assert!(!is_down_monotone(&seg).unwrap());
    }

    #[test]
    fn down_monotone_rejects_orthant_violation() {
        let p = HPolytope::symmetric_box(2, &rat_int(1));
        assert!(is_down_monotone(&p).is_err());
    }

    #[test]
    fn closure_monotone_in_sparsity() {
        let sym = make_symmetric_family(1, 3).unwrap();
        let c1 = sparse_closure(&sym, 1).unwrap();
        let c2 = sparse_closure(&sym, 2).unwrap();
        let c3 = sparse_closure(&sym, 3).unwrap();
        assert!(c1.contains_set(&c2));
        assert!(c2.contains_set(&c3));
        assert!(c1.contains_set(&sym));
    }

    #[test]
    fn closure_is_idempotent() {
        let sym = make_symmetric_family(1, 3).unwrap();
        let c = sparse_closure(&sym, 2).unwrap();
        let cc = sparse_closure(&c, 2).unwrap();
        assert!(equal(&c, &cc));
    }

    #[test]
    fn lift_row_places_coefficients() {
        let row = LinIneq::new(
            QVector::from_ints(&[2, -3]),
            Rational::one(),
        );
        let lifted = lift_row(&row, &[1, 3], 5);
        assert_eq!(lifted.a, QVector::from_ints(&[0, 2, 0, -3, 0]));
        assert_eq!(lifted.b, rat_int(1));
    }
}
