//! Distance of rotated symmetric families to their sparse closures.
//!
//! The base polytope is the symmetrized budgeted box with budget `t` in
//! dimension `n`. Each trial draws a rational skew-symmetric matrix with
//! bounded entries, maps it to a rotation by the Cayley transform, rotates
//! the base, and measures the exact squared Hausdorff distance to the
//! k-sparse closure of the rotated body. Permutation matrices leave the
//! distance unchanged, and every rotation matrix is verified orthogonal by
//! exact multiplication.

use std::time::Instant;

use num_traits::Signed;
use serde_json::json;

use polysparse_core::{
    cayley_rotation, format_rational, hausdorff_sq, make_simplex_family, rat, rat_int,
    sparse_closure, symmetrize, to_f64, QMatrix, RandomSource, Rational,
};

use crate::error::CliError;
use crate::report::{json_f64, ExperimentReport};

/// Largest dimension the exact rotation pipeline will attempt.
const MAX_DIM: usize = 5;
const MAX_ROTATIONS: usize = 10_000;

pub struct RotationParams {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub rotations: usize,
    pub seed: u64,
    /// Skew entries are ratios `p/q` with `|p| <= bound` and `1 <= q <= bound`.
    pub skew_bound: i64,
}

fn skew_matrix(n: usize, rng: &mut RandomSource, bound: i64) -> QMatrix {
    let mut s = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let num = rng.int_in(-bound, bound);
            let den = rng.int_in(1, bound);
            let value = rat(num, den);
            *s.at_mut(j, i) = -&value;
            *s.at_mut(i, j) = value;
        }
    }
    s
}

fn cyclic_permutation(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        *m.at_mut((i + 1) % n, i) = rat_int(1);
    }
    m
}

/// Exact median of a nonempty sorted list of rationals.
fn median(sorted: &[Rational]) -> Rational {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid].clone()
    } else {
        (&sorted[mid - 1] + &sorted[mid]) / rat_int(2)
    }
}

pub fn run_rotation(params: &RotationParams) -> Result<ExperimentReport, CliError> {
    let start = Instant::now();
    let RotationParams {
        n,
        t,
        k,
        rotations,
        seed,
        skew_bound,
    } = *params;
    if n < 2 {
        return Err(CliError::Input(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    if n > MAX_DIM {
        return Err(CliError::Refusal(format!(
            "rotation runs exact closures of rotated bodies and is capped at n = {MAX_DIM}, got {n}"
        )));
    }
    if t == 0 || t > n {
        return Err(CliError::Input(format!(
            "budget must satisfy 1 <= t <= n, got t = {t}"
        )));
    }
    if k == 0 || k >= n {
        return Err(CliError::Input(format!(
            "sparsity must satisfy 1 <= k < n, got k = {k}"
        )));
    }
    if rotations == 0 || rotations > MAX_ROTATIONS {
        return Err(CliError::Input(format!(
            "rotation count must be between 1 and {MAX_ROTATIONS}, got {rotations}"
        )));
    }
    if skew_bound < 1 {
        return Err(CliError::Input(format!(
            "skew entry bound must be at least 1, got {skew_bound}"
        )));
    }

    let base = symmetrize(&make_simplex_family(t, n)?)?;
    let closure = sparse_closure(&base, k)?;
    let baseline = hausdorff_sq(&base, &closure)?;
    let mut report = ExperimentReport::new(
        "rotation",
        json!({
            "n": n,
            "t": t,
            "k": k,
            "rotations": rotations,
            "seed": seed,
            "skew_bound": skew_bound,
        }),
    );

    if k <= t {
        let expected = rat(((n - t) * (n - t)) as i64, n as i64);
        report.check(
            "baseline-closed-form",
            baseline.sq_dist == expected,
            format!(
                "unrotated sq_dist {} expected {}",
                format_rational(&baseline.sq_dist),
                format_rational(&expected)
            ),
        );
    }

    let perm = cyclic_permutation(n);
    let permuted = base.rotate(&perm)?;
    let perm_closure = sparse_closure(&permuted, k)?;
    let perm_dist = hausdorff_sq(&permuted, &perm_closure)?;
    report.check(
        "permutation-invariance",
        perm_dist.sq_dist == baseline.sq_dist,
        format!(
            "cyclic permutation gives {} against baseline {}",
            format_rational(&perm_dist.sq_dist),
            format_rational(&baseline.sq_dist)
        ),
    );

    let root = RandomSource::new(seed);
    let identity = QMatrix::identity(n);
    let mut distances: Vec<Rational> = Vec::with_capacity(rotations);
    let mut all_orthogonal = true;
    let mut all_positive = true;
    for index in 0..rotations {
        let mut rng = root.substream(index as u64);
        let skew = skew_matrix(n, &mut rng, skew_bound);
        let rotation = cayley_rotation(&skew)?;
        let orthogonal = rotation.transpose().mul(&rotation) == identity;
        all_orthogonal = all_orthogonal && orthogonal;
        let rotated = base.rotate(&rotation)?;
        let rotated_closure = sparse_closure(&rotated, k)?;
        let dist = hausdorff_sq(&rotated, &rotated_closure)?;
        let positive = dist.sq_dist.is_positive();
        all_positive = all_positive && positive;
        report.samples.push(json!({
            "rotation": index,
            "sq_dist": format_rational(&dist.sq_dist),
            "sq_dist_float": json_f64(to_f64(&dist.sq_dist)),
            "orthogonal": orthogonal,
            "positive": positive,
        }));
        distances.push(dist.sq_dist);
    }
    report.check(
        "orthogonality",
        all_orthogonal,
        "every Cayley matrix satisfies R^T R = I exactly",
    );
    report.check(
        "positive-distance",
        all_positive,
        "every rotated body keeps a positive distance to its closure",
    );

    distances.sort();
    let min = distances.first().expect("at least one rotation").clone();
    let max = distances.last().expect("at least one rotation").clone();
    let med = median(&distances);
    report.summary = json!({
        "baseline_sq_dist": format_rational(&baseline.sq_dist),
        "baseline_sq_dist_float": json_f64(to_f64(&baseline.sq_dist)),
        "min_sq_dist": format_rational(&min),
        "min_sq_dist_float": json_f64(to_f64(&min)),
        "median_sq_dist": format_rational(&med),
        "median_sq_dist_float": json_f64(to_f64(&med)),
        "max_sq_dist": format_rational(&max),
        "max_sq_dist_float": json_f64(to_f64(&max)),
    });
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}
