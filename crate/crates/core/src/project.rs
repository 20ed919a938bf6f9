//! Orthogonal projection onto coordinate subsets by Fourier-Motzkin
//! elimination.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::PolyError;
use crate::hpoly::{canonicalize_rows, CanonRows, HPolytope, LinIneq};
use crate::vector::QVector;

/// Projects `p` onto the coordinates in `keep` (0-based, any order).
///
/// Variables outside `keep` are eliminated one at a time, highest index
/// first, and the intermediate system is canonicalized after every
/// elimination to keep the row count from compounding. The output lives in
/// dimension `keep.len()`, with coordinates in ascending original order,
/// and is canonical.
pub fn project(p: &HPolytope, keep: &[usize]) -> Result<HPolytope, PolyError> {
    if keep.is_empty() {
        return Err(PolyError::InvalidInput(
            "projection needs a nonempty coordinate set".into(),
        ));
    }
    let mut kset: Vec<usize> = keep.to_vec();
    kset.sort_unstable();
    kset.dedup();
    if *kset.last().expect("nonempty") >= p.dim() {
        return Err(PolyError::InvalidInput(alloc::format!(
            "coordinate {} out of range for dimension {}",
            kset.last().expect("nonempty"),
            p.dim()
        )));
    }

    let out_dim = kset.len();
    let mut dim = p.dim();
    let mut rows = match canonicalize_rows(dim, p.ineqs().to_vec()) {
        CanonRows::Feasible(rows) => rows,
        CanonRows::Infeasible => return Ok(HPolytope::empty(out_dim)),
    };

    for var in (0..p.dim()).rev() {
        if kset.binary_search(&var).is_ok() {
            continue;
        }
        rows = eliminate(dim, var, rows);
        dim -= 1;
        rows = match canonicalize_rows(dim, rows) {
            CanonRows::Feasible(rows) => rows,
            CanonRows::Infeasible => return Ok(HPolytope::empty(out_dim)),
        };
    }

    debug_assert_eq!(dim, out_dim);
    Ok(HPolytope::from_canonical_rows(out_dim, rows))
}

/// One Fourier-Motzkin step: eliminates `var` from `rows`, returning rows in
/// dimension `dim - 1` with the remaining coordinates in original order.
fn eliminate(dim: usize, var: usize, rows: Vec<LinIneq>) -> Vec<LinIneq> {
    let mut pos: Vec<LinIneq> = Vec::new();
    let mut neg: Vec<LinIneq> = Vec::new();
    let mut out: Vec<LinIneq> = Vec::new();

    for row in rows {
        let coef = &row.a[var];
        if coef.is_positive() {
            pos.push(row);
        } else if coef.is_negative() {
            neg.push(row);
        } else {
            out.push(drop_coordinate(row, var));
        }
    }

    for upper in &pos {
        let uc = &upper.a[var];
        for lower in &neg {
            let mu = -lower.a[var].clone();
            let mut coeffs = Vec::with_capacity(dim - 1);
            for j in 0..dim {
                if j == var {
                    continue;
                }
                coeffs.push(&mu * &upper.a[j] + uc * &lower.a[j]);
            }
            let b = &mu * &upper.b + uc * &lower.b;
            out.push(LinIneq::new(QVector(coeffs), b));
        }
    }
    out
}

fn drop_coordinate(row: LinIneq, var: usize) -> LinIneq {
    let mut coeffs = row.a.0;
    coeffs.remove(var);
    LinIneq::new(QVector(coeffs), row.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpoly::equal;
    use crate::rational::rat_int;

    fn simplex(t: i64, n: usize) -> HPolytope {
        let mut rows = HPolytope::unit_box(n).into_ineqs();
        rows.push(LinIneq::from_ints(&alloc::vec![1; n], t));
        HPolytope::new(n, rows).unwrap()
    }

    #[test]
    fn simplex_projects_to_simplex() {
        let got = project(&simplex(1, 3), &[0, 1]).unwrap();
        assert_eq!(got, simplex(1, 2).canonicalize());
    }

    #[test]
    fn box_projects_to_box() {
        let got = project(&HPolytope::unit_box(4), &[1, 3]).unwrap();
        assert_eq!(got, HPolytope::unit_box(2).canonicalize());
    }

    #[test]
    fn two_sparse_sign_polytope_projects_to_square() {
        let mut rows: Vec<LinIneq> = (0..16u64)
            .map(|mask| {
                let coeffs: Vec<i64> = (0..4)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                LinIneq::from_ints(&coeffs, 2)
            })
            .collect();
        rows.extend(HPolytope::symmetric_box(4, &rat_int(1)).into_ineqs());
        let p = HPolytope::new(4, rows).unwrap();
        let got = project(&p, &[0, 1]).unwrap();
        assert_eq!(got, HPolytope::symmetric_box(2, &rat_int(1)).canonicalize());
    }

    #[test]
    fn projection_onto_all_coordinates_is_canonicalization() {
        let p = simplex(2, 3);
        let got = project(&p, &[0, 1, 2]).unwrap();
        assert_eq!(got, p.canonicalize());
    }

    #[test]
    fn keep_set_is_order_insensitive() {
        let p = simplex(1, 3);
        assert_eq!(
            project(&p, &[2, 0]).unwrap(),
            project(&p, &[0, 2]).unwrap()
        );
    }

    #[test]
    fn projection_of_empty_is_empty() {
        let empty = HPolytope::empty(3);
        let got = project(&empty, &[0, 1]).unwrap();
        assert!(got.is_empty_marker());
        assert_eq!(got.dim(), 2);
    }

    #[test]
    fn rejects_bad_coordinate_sets() {
        let p = HPolytope::unit_box(2);
        assert!(project(&p, &[]).is_err());
        assert!(project(&p, &[2]).is_err());
    }

    #[test]
    fn projection_stays_inside_unit_box() {
        let mut rows = HPolytope::symmetric_box(3, &rat_int(1)).into_ineqs();
        rows.push(LinIneq::from_ints(&[1, 1, 1], 1));
        rows.push(LinIneq::from_ints(&[-1, -1, -1], 1));
        let p = HPolytope::new(3, rows).unwrap();
        let q = project(&p, &[0, 1]).unwrap();
        let box2 = HPolytope::symmetric_box(2, &rat_int(1));
        assert!(box2.contains_set(&q));
        assert!(equal(&q, &box2));
    }
}
