//! Distance between the half-budget family and its sparse closure after the
//! dense budget inequalities are added back.
//!
//! For even `n`, the family `P` is the budgeted unit box with budget `n/2`
//! and `Q` is its LP relaxation: the unit box cut by every inequality that
//! forces a majority subset to sum to at most `n/2`. The experiment checks
//! that `P` is exactly the convex hull of the binary points of `Q`, and that
//! for every sparsity `k` up to `n/2` the squared Hausdorff distance from
//! `P` to the intersection of its k-sparse closure with `Q` equals
//! `n ((n-2)/(2n+4))^2`, independent of `k`.

use std::time::Instant;

use serde_json::json;

use polysparse_core::{
    equal, facets, format_rational, hausdorff_sq, make_qn, make_simplex_family, rat, rat_int,
    sparse_closure, to_f64, QVector, Rational, VPolytope,
};

use crate::error::CliError;
use crate::report::{json_f64, ExperimentReport};

/// Largest dimension whose vertex sets this experiment will enumerate.
const MAX_DIM: usize = 6;

/// Squared distance predicted for every sparsity `k <= n/2`.
pub fn expected_sq_dist(n: usize) -> Rational {
    let ratio = rat(n as i64 - 2, 2 * n as i64 + 4);
    rat_int(n as i64) * &ratio * &ratio
}

pub fn run_lp_relax(n: usize) -> Result<ExperimentReport, CliError> {
    let start = Instant::now();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CliError::Input(format!(
            "dimension must be even and at least 2, got {n}"
        )));
    }
    if n > MAX_DIM {
        return Err(CliError::Refusal(format!(
            "lp-relax runs the exact vertex pipeline and is capped at n = {MAX_DIM}, got {n}"
        )));
    }
    let t = n / 2;
    let p = make_simplex_family(t, n)?;
    let q = make_qn(n)?;
    let mut report = ExperimentReport::new("lp-relax", json!({ "n": n, "t": t }));

    let mut binary_points = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let coords: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        let point = QVector::from_ints(&coords);
        if q.contains(&point) {
            binary_points.push(point);
        }
    }
    let hull = facets(&VPolytope::new(n, binary_points)?)?;
    let hull_ok = equal(&hull, &p);
    report.check(
        "integer-hull",
        hull_ok,
        format!("convex hull of the binary points of Q_{n} against the budgeted box"),
    );

    let expected = expected_sq_dist(n);
    for k in 1..=t {
        let closure = sparse_closure(&p, k)?;
        let relaxed = closure.intersect(&q)?;
        let dist = hausdorff_sq(&p, &relaxed)?;
        let ok = dist.sq_dist == expected;
        report.check(
            format!("distance-k{k}"),
            ok,
            format!(
                "sq_dist {} expected {}",
                format_rational(&dist.sq_dist),
                format_rational(&expected)
            ),
        );
        let witness: Vec<String> = dist.witness_outer.iter().map(format_rational).collect();
        report.samples.push(json!({
            "k": k,
            "sq_dist": format_rational(&dist.sq_dist),
            "sq_dist_float": json_f64(to_f64(&dist.sq_dist)),
            "matches_expected": ok,
            "witness": witness,
        }));
    }

    report.summary = json!({
        "expected_sq_dist": format_rational(&expected),
        "expected_sq_dist_float": json_f64(to_f64(&expected)),
        "integer_hull_matches": hull_ok,
        "sparsities_checked": t,
    });
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}
