//! Polytopes in inequality representation.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::lp::{maximize, LpOutcome};
use crate::matrix::QMatrix;
use crate::rational::{rat_int, Rational};
use crate::vector::QVector;

/// A single linear inequality `a · x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinIneq {
    pub a: QVector,
    pub b: Rational,
}

impl LinIneq {
    pub fn new(a: QVector, b: Rational) -> Self {
        LinIneq { a, b }
    }

    /// Builds an inequality from integer data, `coeffs · x <= rhs`.
    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Self {
        LinIneq {
            a: QVector::from_ints(coeffs),
            b: rat_int(rhs),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Left-hand side value `a · x`.
    pub fn eval(&self, x: &QVector) -> Rational {
        self.a.dot(x)
    }

    pub fn is_satisfied_by(&self, x: &QVector) -> bool {
        self.eval(x) <= self.b
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    /// Zero rows are returned unchanged.
    pub fn normalized(&self) -> LinIneq {
        match self.a.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let scale = lead.abs().recip();
                LinIneq {
                    a: self.a.scale(&scale),
                    b: &self.b * &scale,
                }
            }
            None => self.clone(),
        }
    }
}

/// A polyhedron `{x : a_i · x <= b_i}` described by finitely many
/// inequalities.
///
/// The canonical form produced by [`HPolytope::canonicalize`] is
/// redundancy-free, row-normalized, lexicographically sorted, and unique for
/// full-dimensional polytopes. The empty set canonicalizes to the single
/// marker row `0 · x <= -1`.
///
/// `PartialEq` compares representations (dimension and inequality lists),
/// not point sets; use [`equal`] for set equality.
#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    ineqs: Vec<LinIneq>,
    canonical: bool,
}

impl PartialEq for HPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.ineqs == other.ineqs
    }
}

impl Eq for HPolytope {}

impl HPolytope {
    pub fn new(dim: usize, ineqs: Vec<LinIneq>) -> Result<Self, PolyError> {
        if dim == 0 {
            return Err(PolyError::InvalidInput("dimension must be positive".into()));
        }
        for row in &ineqs {
            if row.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    got: row.dim(),
                });
            }
        }
        Ok(HPolytope {
            dim,
            ineqs,
            canonical: false,
        })
    }

    pub(crate) fn from_rows_unchecked(dim: usize, ineqs: Vec<LinIneq>) -> Self {
        HPolytope {
            dim,
            ineqs,
            canonical: false,
        }
    }

    pub(crate) fn from_canonical_rows(dim: usize, ineqs: Vec<LinIneq>) -> Self {
        HPolytope {
            dim,
            ineqs,
            canonical: true,
        }
    }

    /// The unit box `[0,1]^dim`.
    pub fn unit_box(dim: usize) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut hi = alloc::vec![0i64; dim];
            hi[i] = 1;
            rows.push(LinIneq::from_ints(&hi, 1));
            hi[i] = -1;
            rows.push(LinIneq::from_ints(&hi, 0));
        }
        HPolytope::from_rows_unchecked(dim, rows)
    }

    /// The box `[-r, r]^dim`.
    pub fn symmetric_box(dim: usize, r: &Rational) -> Self {
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut unit = QVector::zeros(dim);
            unit[i] = Rational::one();
            rows.push(LinIneq::new(unit.clone(), r.clone()));
            unit[i] = -Rational::one();
            rows.push(LinIneq::new(unit, r.clone()));
        }
        HPolytope::from_rows_unchecked(dim, rows)
    }

    /// The canonical empty polytope in the given dimension.
    pub fn empty(dim: usize) -> Self {
        HPolytope::from_canonical_rows(
            dim,
            alloc::vec![LinIneq::new(QVector::zeros(dim), rat_int(-1))],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[LinIneq] {
        &self.ineqs
    }

    pub fn into_ineqs(self) -> Vec<LinIneq> {
        self.ineqs
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// True if this is the canonical marker for the empty set.
    pub fn is_empty_marker(&self) -> bool {
        self.ineqs.len() == 1
            && self.ineqs[0].a.is_zero()
            && self.ineqs[0].b.is_negative()
    }

    pub fn contains(&self, x: &QVector) -> bool {
        assert_eq!(x.dim(), self.dim, "point dimension mismatch");
        self.ineqs.iter().all(|row| row.is_satisfied_by(x))
    }

    /// True if every point of `other` satisfies every inequality of `self`.
    pub fn contains_set(&self, other: &HPolytope) -> bool {
        assert_eq!(other.dim, self.dim, "polytope dimension mismatch");
        rows_valid_over(&self.ineqs, other)
    }

    /// Removes redundant inequalities, normalizes, and sorts.
    ///
    /// Every removal is certified by an exact LP over the remaining rows.
    /// The result is idempotent, and an infeasible system collapses to the
    /// empty marker.
    pub fn canonicalize(&self) -> HPolytope {
        if self.canonical {
            return self.clone();
        }
        match canonicalize_rows(self.dim, self.ineqs.clone()) {
            CanonRows::Feasible(rows) => HPolytope::from_canonical_rows(self.dim, rows),
            CanonRows::Infeasible => HPolytope::empty(self.dim),
        }
    }

    /// Intersection, returned in canonical form.
    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope, PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut rows = self.ineqs.clone();
        rows.extend(other.ineqs.iter().cloned());
        Ok(HPolytope::from_rows_unchecked(self.dim, rows).canonicalize())
    }

    /// The dilate `{alpha x : x in P}` for `alpha > 0`.
    pub fn scale(&self, alpha: &Rational) -> Result<HPolytope, PolyError> {
        if !alpha.is_positive() {
            return Err(PolyError::InvalidInput(
                "scale factor must be positive".into(),
            ));
        }
        let rows = self
            .ineqs
            .iter()
            .map(|row| LinIneq::new(row.a.clone(), &row.b * alpha))
            .collect();
        Ok(HPolytope {
            dim: self.dim,
            ineqs: rows,
            canonical: self.canonical,
        })
    }

    /// The reflection `P^I`: coordinates listed in `keep` (sorted, 0-based)
    /// are preserved, all others flip sign.
    pub fn reflect(&self, keep: &[usize]) -> HPolytope {
        let mut rows: Vec<LinIneq> = self
            .ineqs
            .iter()
            .map(|row| LinIneq::new(row.a.reflect(keep), row.b.clone()))
            .collect();
        if self.canonical {
            rows.sort();
        }
        HPolytope {
            dim: self.dim,
            ineqs: rows,
            canonical: self.canonical,
        }
    }

    /// The image `{R x : x in P}` under an orthogonal matrix `R`.
    pub fn rotate(&self, r: &QMatrix) -> Result<HPolytope, PolyError> {
        if r.rows() != self.dim || r.cols() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                got: r.rows(),
            });
        }
        let mut rows: Vec<LinIneq> = self
            .ineqs
            .iter()
            .map(|row| LinIneq::new(r.mul_vec(&row.a), row.b.clone()).normalized())
            .collect();
        if self.canonical {
            rows.sort();
        }
        Ok(HPolytope {
            dim: self.dim,
            ineqs: rows,
            canonical: self.canonical,
        })
    }
}

/// Set equality, decided by canonical-form comparison with an LP
/// double-inclusion fallback. Polytopes of different dimensions are unequal.
pub fn equal(p: &HPolytope, q: &HPolytope) -> bool {
    if p.dim() != q.dim() {
        return false;
    }
    let pc = p.canonicalize();
    let qc = q.canonicalize();
    if pc.ineqs == qc.ineqs {
        return true;
    }
    rows_valid_over(&pc.ineqs, &qc) && rows_valid_over(&qc.ineqs, &pc)
}

/// True if every inequality in `rows` holds over all of `poly`.
fn rows_valid_over(rows: &[LinIneq], poly: &HPolytope) -> bool {
    let operand: Vec<&LinIneq> = poly.ineqs.iter().collect();
    for row in rows {
        match maximize(poly.dim, &operand, &row.a, Some(&row.b)) {
            LpOutcome::Optimal(opt) => {
                if opt.value > row.b {
                    return false;
                }
            }
            LpOutcome::AboveThreshold(_) | LpOutcome::Unbounded => return false,
            LpOutcome::Infeasible => return true,
        }
    }
    true
}

pub(crate) enum CanonRows {
    Feasible(Vec<LinIneq>),
    Infeasible,
}

/// Row-level canonicalization shared by `HPolytope::canonicalize` and the
/// projection pipeline: normalize, dedupe, certify feasibility, then remove
/// redundant rows one at a time in lexicographic order.
pub(crate) fn canonicalize_rows(dim: usize, rows: Vec<LinIneq>) -> CanonRows {
    let mut kept: Vec<LinIneq> = Vec::with_capacity(rows.len());
    for row in rows {
        if row.a.is_zero() {
            if row.b.is_negative() {
                return CanonRows::Infeasible;
            }
            continue;
        }
        kept.push(row.normalized());
    }
    kept.sort();
    kept.dedup_by(|next, prev| next.a == prev.a && next.b >= prev.b);

    {
        let refs: Vec<&LinIneq> = kept.iter().collect();
        let origin = QVector::zeros(dim);
        if matches!(
            maximize(dim, &refs, &origin, None),
            LpOutcome::Infeasible
        ) {
            return CanonRows::Infeasible;
        }
    }

    let mut alive = alloc::vec![true; kept.len()];
    for i in 0..kept.len() {
        let relaxed = LinIneq::new(kept[i].a.clone(), &kept[i].b + rat_int(1));
        let mut refs: Vec<&LinIneq> = Vec::with_capacity(kept.len());
        for (j, row) in kept.iter().enumerate() {
            if j != i && alive[j] {
                refs.push(row);
            }
        }
        refs.push(&relaxed);
        let redundant = match maximize(dim, &refs, &kept[i].a, Some(&kept[i].b)) {
            LpOutcome::Optimal(opt) => opt.value <= kept[i].b,
            LpOutcome::AboveThreshold(_) => false,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => false,
        };
        if redundant {
            alive[i] = false;
        }
    }

    let mut out = Vec::with_capacity(kept.len());
    for (row, keep) in kept.into_iter().zip(alive) {
        if keep {
            out.push(row);
        }
    }
    CanonRows::Feasible(out)
}
