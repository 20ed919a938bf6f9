//! Constructors and closed-form evaluators for the benchmark families.
//!
//! The polytope families here are the standing examples used throughout the
//! test suite and the experiment harness:
//!
//! * `P(t, n)`: the unit box intersected with a budget `x_1 + ... + x_n <= t`.
//! * `Q_n`: the box with every (n/2+1)-subset sum capped at `n/2`.
//! * The symmetrized family and its sparse closures, both given directly by
//!   explicit inequality descriptions.
//!
//! Alongside the constructors there are closed-form evaluators for squared
//! Hausdorff distances and directional gaps in the cases where an explicit
//! formula exists, plus a Bernstein tail bound used by the sampling
//! experiments. The closed forms are cross-checked against the generic exact
//! pipeline in the integration tests.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::PolyError;
use crate::hpoly::{HPolytope, LinIneq};
use crate::rational::{rat, rat_int, Rational};
use crate::subsets::{all_subsets, k_subsets};
use crate::vector::QVector;

/// Parameter triple shared by the family constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    /// Ambient dimension.
    pub n: usize,
    /// Budget on the coordinate sum.
    pub t: usize,
    /// Sparsity of the closure under study.
    pub k: usize,
}

impl FamilyParams {
    /// Checks `1 <= t <= n` and `1 <= k <= n`.
    pub fn validate(&self) -> Result<(), PolyError> {
        if self.n == 0 {
            return Err(PolyError::InvalidInput(
                "dimension must be positive".into(),
            ));
        }
        if self.t == 0 || self.t > self.n {
            return Err(PolyError::InvalidInput(
                "budget t must satisfy 1 <= t <= n".into(),
            ));
        }
        if self.k == 0 || self.k > self.n {
            return Err(PolyError::InvalidInput(
                "sparsity k must satisfy 1 <= k <= n".into(),
            ));
        }
        Ok(())
    }
}

fn check_t_n(t: usize, n: usize) -> Result<(), PolyError> {
    if n == 0 {
        return Err(PolyError::InvalidInput(
            "dimension must be positive".into(),
        ));
    }
    if t == 0 || t > n {
        return Err(PolyError::InvalidInput(
            "budget t must satisfy 1 <= t <= n".into(),
        ));
    }
    Ok(())
}

/// Unit-box rows `0 <= x_i <= 1` for dimension `n`.
fn unit_box_rows(n: usize) -> Vec<LinIneq> {
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut up = QVector::zeros(n);
        up[i] = rat_int(1);
        rows.push(LinIneq::new(up, rat_int(1)));
        let mut down = QVector::zeros(n);
        down[i] = rat_int(-1);
        rows.push(LinIneq::new(down, rat_int(0)));
    }
    rows
}

/// Box rows `-1 <= x_i <= 1` for dimension `n`.
fn symmetric_box_rows(n: usize) -> Vec<LinIneq> {
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut up = QVector::zeros(n);
        up[i] = rat_int(1);
        rows.push(LinIneq::new(up, rat_int(1)));
        let mut down = QVector::zeros(n);
        down[i] = rat_int(-1);
        rows.push(LinIneq::new(down, rat_int(1)));
    }
    rows
}

/// The budgeted box `P(t, n) = {x in [0,1]^n : x_1 + ... + x_n <= t}`.
///
/// Returns the canonical description, so redundant rows (the box uppers when
/// `t = 1`, or the budget row when `t = n`) are already removed.
pub fn make_simplex_family(t: usize, n: usize) -> Result<HPolytope, PolyError> {
    check_t_n(t, n)?;
    let mut rows = unit_box_rows(n);
    let mut ones = QVector::zeros(n);
    for i in 0..n {
        ones[i] = rat_int(1);
    }
    rows.push(LinIneq::new(ones, rat_int(t as i64)));
    Ok(HPolytope::new(n, rows)?.canonicalize())
}

/// The relaxation `Q_n`: the unit box with every subset sum over `n/2 + 1`
/// coordinates capped at `n/2`. Requires `n` even and positive.
pub fn make_qn(n: usize) -> Result<HPolytope, PolyError> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(PolyError::InvalidInput(
            "Q_n requires an even positive dimension".into(),
        ));
    }
    let half = n / 2;
    let mut rows = unit_box_rows(n);
    for subset in k_subsets(n, half + 1) {
        let mut a = QVector::zeros(n);
        for &i in &subset {
            a[i] = rat_int(1);
        }
        rows.push(LinIneq::new(a, rat_int(half as i64)));
    }
    Ok(HPolytope::new(n, rows)?.canonicalize())
}

/// The symmetrized budgeted box, described by its explicit inequalities:
/// `x in [-1,1]^n` with every signed full-support sum at most `t`.
pub fn make_symmetric_family(t: usize, n: usize) -> Result<HPolytope, PolyError> {
    check_t_n(t, n)?;
    let mut rows = symmetric_box_rows(n);
    for positive in all_subsets(n) {
        let mut a = QVector::zeros(n);
        for i in 0..n {
            a[i] = rat_int(-1);
        }
        for &i in &positive {
            a[i] = rat_int(1);
        }
        rows.push(LinIneq::new(a, rat_int(t as i64)));
    }
    Ok(HPolytope::new(n, rows)?.canonicalize())
}

/// The k-sparse closure of the symmetrized budgeted box, described by its
/// explicit inequalities: `x in [-1,1]^n` with every signed sum over exactly
/// `k` coordinates at most `t`. Equals the full box whenever `k <= t`.
pub fn make_symmetric_closure(t: usize, n: usize, k: usize) -> Result<HPolytope, PolyError> {
    check_t_n(t, n)?;
    if k == 0 || k > n {
        return Err(PolyError::InvalidInput(
            "sparsity k must satisfy 1 <= k <= n".into(),
        ));
    }
    let mut rows = symmetric_box_rows(n);
    for support in k_subsets(n, k) {
        for positive_mask in 0..1usize << k {
            let mut a = QVector::zeros(n);
            for (bit, &i) in support.iter().enumerate() {
                a[i] = if positive_mask & (1 << bit) != 0 {
                    rat_int(1)
                } else {
                    rat_int(-1)
                };
            }
            rows.push(LinIneq::new(a, rat_int(t as i64)));
        }
    }
    Ok(HPolytope::new(n, rows)?.canonicalize())
}

/// Exact squared Hausdorff distance between `P(t, n)` and its k-sparse
/// closure, in the two cases with a known formula: `t = 1` and `t = n/2`.
pub fn closed_form_sq_dist(t: usize, n: usize, k: usize) -> Result<Rational, PolyError> {
    check_t_n(t, n)?;
    if k == 0 || k > n {
        return Err(PolyError::InvalidInput(
            "sparsity k must satisfy 1 <= k <= n".into(),
        ));
    }
    let (ni, ki) = (n as i64, k as i64);
    if t == 1 {
        // (sqrt(n)/k - 1/sqrt(n))^2 = n/k^2 - 2/k + 1/n
        return Ok(rat(ni, ki * ki) - rat(2, ki) + rat(1, ni));
    }
    if 2 * t == n {
        if k <= n / 2 {
            // (sqrt(n)/2)^2
            return Ok(rat(ni, 4));
        }
        // (n sqrt(n) / (2k) - sqrt(n)/2)^2 = n (n/(2k) - 1/2)^2
        let inner = rat(ni, 2 * ki) - rat(1, 2);
        return Ok(rat_int(ni) * &inner * &inner);
    }
    Err(PolyError::InvalidInput(
        "no closed-form distance for this budget; only t = 1 and t = n/2 are supported".into(),
    ))
}

/// Closed-form directional gap between the symmetrized budgeted box and its
/// k-sparse closure, valid for `k <= t` (the closure is then the full box):
/// the gap in direction `c` is the l1 norm of `c` minus the sum of its `t`
/// largest magnitudes.
pub fn closed_form_gap_sym(t: usize, n: usize, k: usize, c: &[f64]) -> Result<f64, PolyError> {
    check_gap_params(t, n, k, c.len())?;
    if c.iter().any(|v| !v.is_finite()) {
        return Err(PolyError::InvalidInput(
            "direction entries must be finite".into(),
        ));
    }
    let mut mags: Vec<f64> = c.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).expect("finite entries compare totally"));
    let total: f64 = mags.iter().sum();
    let top: f64 = mags[..t].iter().sum();
    Ok(total - top)
}

/// Exact-rational variant of [`closed_form_gap_sym`], for zero-tolerance
/// comparison against the LP pipeline.
pub fn closed_form_gap_sym_exact(
    t: usize,
    n: usize,
    k: usize,
    c: &QVector,
) -> Result<Rational, PolyError> {
    check_gap_params(t, n, k, c.dim())?;
    let mut mags: Vec<Rational> = c.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.cmp(a));
    let total: Rational = mags.iter().sum();
    let top: Rational = mags[..t].iter().sum();
    Ok(total - top)
}

fn check_gap_params(t: usize, n: usize, k: usize, len: usize) -> Result<(), PolyError> {
    check_t_n(t, n)?;
    if k == 0 {
        return Err(PolyError::InvalidInput(
            "sparsity k must be positive".into(),
        ));
    }
    if k > t {
        return Err(PolyError::InvalidInput(
            "closed-form gap requires k <= t; use the LP pipeline otherwise".into(),
        ));
    }
    if len != n {
        return Err(PolyError::DimensionMismatch { expected: n, got: len });
    }
    Ok(())
}

/// Bernstein tail bound `exp(-min{w^2/(4U), 3w/(4M)})` for a sum with
/// variance proxy `U` and magnitude bound `M`.
pub fn bernstein_bound(w: f64, u: f64, m: f64) -> Result<f64, PolyError> {
    if !(w > 0.0 && u > 0.0 && m > 0.0) || !(w.is_finite() && u.is_finite() && m.is_finite()) {
        return Err(PolyError::InvalidInput(
            "Bernstein bound requires positive finite w, U, M".into(),
        ));
    }
    let exponent = (w * w / (4.0 * u)).min(3.0 * w / (4.0 * m));
    Ok(libm::exp(-exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::equal;
    use num_traits::Zero;

    fn point(coords: &[(i64, i64)]) -> QVector {
        QVector(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn simplex_family_small_budget_drops_box_uppers() {
        let p = make_simplex_family(1, 2).unwrap();
        let expected = HPolytope::new(
            2,
            alloc::vec![
                LinIneq::from_ints(&[-1, 0], 0),
                LinIneq::from_ints(&[0, -1], 0),
                LinIneq::from_ints(&[1, 1], 1),
            ],
        )
        .unwrap();
        assert_eq!(p.ineqs().len(), 3);
        assert!(equal(&p, &expected));
    }

    #[test]
    fn simplex_family_full_budget_is_unit_box() {
        let p = make_simplex_family(3, 3).unwrap();
        assert!(equal(&p, &HPolytope::unit_box(3)));
        assert_eq!(p.ineqs().len(), 6);
    }

    #[test]
    fn simplex_family_rejects_bad_budget() {
        assert!(make_simplex_family(0, 3).is_err());
        assert!(make_simplex_family(4, 3).is_err());
    }

    #[test]
    fn qn_at_two_is_the_simplex_family() {
        let q = make_qn(2).unwrap();
        let p = make_simplex_family(1, 2).unwrap();
        assert!(equal(&q, &p));
    }

    #[test]
    fn qn_boundary_point() {
        let q = make_qn(4).unwrap();
        let inside = point(&[(2, 3), (2, 3), (2, 3), (2, 3)]);
        let outside = point(&[(67, 100), (67, 100), (67, 100), (67, 100)]);
        assert!(q.contains(&inside));
        assert!(!q.contains(&outside));
    }

    #[test]
    fn qn_rejects_odd_dimension() {
        assert!(make_qn(3).is_err());
        assert!(make_qn(0).is_err());
    }

    #[test]
    fn symmetric_family_unit_budget_is_cross_polytope() {
        let p = make_symmetric_family(1, 3).unwrap();
        let mut rows = Vec::new();
        for mask in 0..8usize {
            let coords: Vec<i64> = (0..3)
                .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
                .collect();
            rows.push(LinIneq::from_ints(&coords, 1));
        }
        let cross = HPolytope::new(3, rows).unwrap();
        assert!(equal(&p, &cross));
        assert_eq!(p.ineqs().len(), 8);
    }

    #[test]
    fn symmetric_family_full_budget_is_box() {
        let p = make_symmetric_family(3, 3).unwrap();
        assert!(equal(&p, &HPolytope::symmetric_box(3, &rat_int(1))));
    }

    #[test]
    fn symmetric_closure_below_budget_is_box() {
        let p = make_symmetric_closure(2, 4, 2).unwrap();
        assert!(equal(&p, &HPolytope::symmetric_box(4, &rat_int(1))));
    }

    #[test]
    fn symmetric_closure_pair_rows() {
        let p = make_symmetric_closure(1, 3, 2).unwrap();
        let mut rows = symmetric_box_rows(3);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let mut coords = [0i64; 3];
                coords[i] = si;
                coords[j] = sj;
                rows.push(LinIneq::from_ints(&coords, 1));
            }
        }
        let expected = HPolytope::new(3, rows).unwrap();
        assert!(equal(&p, &expected));
        assert_eq!(p.ineqs().len(), 12);
    }

    #[test]
    fn closed_form_sq_dist_frozen_values() {
        assert_eq!(closed_form_sq_dist(1, 2, 1).unwrap(), rat(1, 2));
        assert_eq!(closed_form_sq_dist(2, 4, 3).unwrap(), rat(1, 9));
        assert_eq!(closed_form_sq_dist(2, 4, 2).unwrap(), rat_int(1));
        assert_eq!(closed_form_sq_dist(1, 5, 5).unwrap(), Rational::zero());
        assert_eq!(closed_form_sq_dist(3, 6, 6).unwrap(), Rational::zero());
    }

    #[test]
    fn closed_form_sq_dist_rejects_unknown_budget() {
        assert!(closed_form_sq_dist(2, 5, 1).is_err());
        assert!(closed_form_sq_dist(3, 7, 2).is_err());
    }

    #[test]
    fn gap_formula_axis_direction_is_zero() {
        let c = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(closed_form_gap_sym(1, 4, 1, &c).unwrap(), 0.0);
    }

    #[test]
    fn gap_formula_uniform_direction() {
        let c = [0.5, 0.5, 0.5, 0.5];
        assert_eq!(closed_form_gap_sym(1, 4, 1, &c).unwrap(), 1.5);
    }

    #[test]
    fn gap_formula_rejects_large_sparsity() {
        let c = [1.0, 1.0, 1.0];
        assert!(closed_form_gap_sym(1, 3, 2, &c).is_err());
    }

    #[test]
    fn gap_formula_exact_matches_float_on_integers() {
        let c = QVector::from_ints(&[3, -1, 0, 2, -5]);
        let exact = closed_form_gap_sym_exact(2, 5, 1, &c).unwrap();
        let float = closed_form_gap_sym(2, 5, 1, &[3.0, -1.0, 0.0, 2.0, -5.0]).unwrap();
        assert_eq!(exact, rat_int(3));
        assert_eq!(crate::rational::to_f64(&exact), float);
    }

    #[test]
    fn bernstein_bound_values() {
        let b = bernstein_bound(2.0, 1.0, 1.0).unwrap();
        assert!((b - libm::exp(-1.0)).abs() < 1e-15);
        assert!(bernstein_bound(0.0, 1.0, 1.0).is_err());
        assert!(bernstein_bound(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn family_params_validation() {
        assert!(FamilyParams { n: 4, t: 2, k: 2 }.validate().is_ok());
        assert!(FamilyParams { n: 4, t: 0, k: 2 }.validate().is_err());
        assert!(FamilyParams { n: 4, t: 5, k: 2 }.validate().is_err());
        assert!(FamilyParams { n: 4, t: 2, k: 0 }.validate().is_err());
        assert!(FamilyParams { n: 0, t: 1, k: 1 }.validate().is_err());
    }
}
