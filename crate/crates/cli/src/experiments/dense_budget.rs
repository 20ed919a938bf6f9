//! Survival of scaled sign vectors against many dense budget cuts.
//!
//! The reference polytope is the symmetric budgeted box in dimension `n`
//! with budget `t = n/2`. Each generated cut has nonnegative coefficients
//! normalized to unit l1 norm and a right-hand side equal to the exact
//! support of the cut direction over the reference, so every cut is tight
//! and valid. A sign vector `X` in `{-1,1}^n` survives when the scaled
//! point `(2/3) X` satisfies all cuts; survivors certify that the budgeted
//! sparse closure keeps points at squared distance `n/36` from the
//! reference no matter how many dense cuts the budget admits.
//!
//! Sampling is exhaustive when `2^n` does not exceed the sample budget and
//! seeded Monte Carlo otherwise. Generated cuts are evaluated in integer
//! arithmetic, which is exact: with integer weights `u` and top-half sum
//! `T`, the cut test for `(2/3) X` is `2 (u . X) <= 3 T`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::Signed;
use serde_json::json;

use polysparse_core::{
    bernstein_bound, budgeted_closure, format_rational, make_symmetric_family, nearest_point,
    rat, rat_int, to_f64, vertices, CutSet, LinIneq, QVector, RandomSource, Rational,
};

use crate::error::CliError;
use crate::formats::read_hpoly;
use crate::report::{json_f64, wilson_interval, ExperimentReport};

/// Substream index offset for cut generation, disjoint from sample indices.
const CUT_STREAM_BASE: u64 = 1 << 32;
/// Upper bound on generated integer cut weights.
const WEIGHT_RANGE: i64 = 1_000_000;
/// Largest dimension for the exact vertex-based survivor certificate.
const EXACT_CERT_MAX_DIM: usize = 4;
const MAX_DIM: usize = 10_000;
const MAX_SAMPLES: usize = 100_000_000;
const MAX_CUTS: usize = 1_000_000;

pub struct DenseBudgetParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    /// Optional file of user-supplied cuts in H-polytope format, replacing
    /// the seeded generator.
    pub cuts_path: Option<PathBuf>,
}

struct Cut {
    coeffs: QVector,
    rhs: Rational,
    /// Integer weights and top-half sum for generated cuts.
    ints: Option<(Vec<i64>, i64)>,
    /// Bernstein bound on the probability that a uniform sign vector
    /// violates this cut.
    bound: f64,
}

impl Cut {
    fn survives(&self, signs: &[i64]) -> bool {
        match &self.ints {
            Some((weights, top)) => {
                let dot: i64 = weights.iter().zip(signs).map(|(u, s)| u * s).sum();
                2 * dot <= 3 * top
            }
            None => {
                let dot: Rational = self
                    .coeffs
                    .iter()
                    .zip(signs)
                    .map(|(c, s)| c * &rat_int(*s))
                    .sum();
                dot * rat_int(2) <= &self.rhs * &rat_int(3)
            }
        }
    }
}

/// Exact support of a direction over the symmetric budgeted box: the sum of
/// its `t` largest absolute coefficients.
fn support_over_family(c: &QVector, t: usize) -> Rational {
    let mut mags: Vec<Rational> = c.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.cmp(a));
    mags[..t].iter().sum()
}

fn cut_bound(coeffs: &QVector, rhs: &Rational) -> Result<f64, CliError> {
    let w = 1.5 * to_f64(rhs);
    let u: f64 = coeffs.iter().map(|c| to_f64(c) * to_f64(c)).sum();
    let m = coeffs
        .iter()
        .map(|c| to_f64(&c.abs()))
        .fold(0.0f64, f64::max);
    Ok(bernstein_bound(w, u, m)?)
}

fn generate_cuts(n: usize, t: usize, d: usize, seed: u64) -> Result<Vec<Cut>, CliError> {
    let root = RandomSource::new(seed);
    let mut cuts = Vec::with_capacity(d);
    for j in 0..d {
        let mut rng = root.substream(CUT_STREAM_BASE + j as u64);
        let weights: Vec<i64> = (0..n).map(|_| rng.int_in(1, WEIGHT_RANGE)).collect();
        let mut sorted = weights.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let top: i64 = sorted[..t].iter().sum();
        let scale: i64 = weights.iter().sum();
        let coeffs = QVector(weights.iter().map(|u| rat(*u, scale)).collect());
        let rhs = rat(top, scale);
        let bound = cut_bound(&coeffs, &rhs)?;
        cuts.push(Cut {
            coeffs,
            rhs,
            ints: Some((weights, top)),
            bound,
        });
    }
    Ok(cuts)
}

fn load_cuts(path: &Path, n: usize, t: usize) -> Result<Vec<Cut>, CliError> {
    let poly = read_hpoly(path)?;
    if poly.dim() != n {
        return Err(CliError::Input(format!(
            "cuts file has dimension {}, expected {n}",
            poly.dim()
        )));
    }
    let mut cuts = Vec::new();
    for (index, row) in poly.into_ineqs().into_iter().enumerate() {
        let support = support_over_family(&row.a, t);
        if support > row.b {
            return Err(CliError::Input(format!(
                "cut {index} is invalid for the reference: support {} exceeds bound {}",
                format_rational(&support),
                format_rational(&row.b)
            )));
        }
        let bound = cut_bound(&row.a, &row.b)?;
        cuts.push(Cut {
            coeffs: row.a,
            rhs: row.b,
            ints: None,
            bound,
        });
    }
    Ok(cuts)
}

fn signs_from_mask(mask: u64, n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| if (mask >> i) & 1 == 1 { 1 } else { -1 })
        .collect()
}

/// The scaled survivor point `(2/3) X` as an exact vector.
fn scaled_point(signs: &[i64]) -> QVector {
    QVector(signs.iter().map(|s| rat(2 * s, 3)).collect())
}

pub fn run_dense_budget(params: &DenseBudgetParams) -> Result<ExperimentReport, CliError> {
    let start = Instant::now();
    let DenseBudgetParams {
        n,
        k,
        d,
        samples,
        seed,
        ref cuts_path,
    } = *params;
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CliError::Input(format!(
            "dimension must be even and at least 2, got {n}"
        )));
    }
    if n > MAX_DIM {
        return Err(CliError::Refusal(format!(
            "dense-budget is capped at n = {MAX_DIM}, got {n}"
        )));
    }
    let t = n / 2;
    if k == 0 || k > t {
        return Err(CliError::Input(format!(
            "sparsity must satisfy 1 <= k <= n/2, got k = {k} with n = {n}"
        )));
    }
    if samples == 0 {
        return Err(CliError::Input("sample count must be positive".into()));
    }
    if samples > MAX_SAMPLES {
        return Err(CliError::Refusal(format!(
            "sample count is capped at {MAX_SAMPLES}, got {samples}"
        )));
    }
    if d > MAX_CUTS {
        return Err(CliError::Refusal(format!(
            "cut count is capped at {MAX_CUTS}, got {d}"
        )));
    }

    let cuts = match cuts_path {
        Some(path) => load_cuts(path, n, t)?,
        None => generate_cuts(n, t, d, seed)?,
    };
    let num_cuts = cuts.len();

    let mut report = ExperimentReport::new(
        "dense-budget",
        json!({
            "n": n,
            "k": k,
            "t": t,
            "cuts": num_cuts,
            "cuts_source": if cuts_path.is_some() { "file" } else { "generated" },
            "samples": samples,
            "seed": seed,
        }),
    );
    report.check(
        "cuts-valid",
        true,
        format!("{num_cuts} cuts certified against the exact support of the reference"),
    );

    let exhaustive = n < 63 && (1u64 << n) <= samples as u64;
    let total: u64 = if exhaustive { 1u64 << n } else { samples as u64 };
    let root = RandomSource::new(seed);
    let mut survivors: u64 = 0;
    let mut violations = vec![0u64; num_cuts];
    let mut first_survivor: Option<(u64, Vec<i64>)> = None;

    for index in 0..total {
        let signs = if exhaustive {
            signs_from_mask(index, n)
        } else {
            let mut rng = root.substream(index);
            (0..n)
                .map(|_| if rng.int_in(0, 1) == 1 { 1 } else { -1 })
                .collect()
        };
        let mut survived = true;
        for (j, cut) in cuts.iter().enumerate() {
            if !cut.survives(&signs) {
                violations[j] += 1;
                survived = false;
            }
        }
        if survived {
            survivors += 1;
            if first_survivor.is_none() {
                first_survivor = Some((index, signs));
            }
        }
    }

    let survival_freq = survivors as f64 / total as f64;
    let bernstein_total: f64 = cuts.iter().map(|c| c.bound).sum();
    let predicted_floor = (1.0 - bernstein_total).max(0.0);
    report.check(
        "survivor-exists",
        survivors > 0,
        format!("{survivors} of {total} sign vectors survive all cuts"),
    );
    report.check(
        "survival-floor",
        survival_freq >= predicted_floor,
        format!("empirical {survival_freq} against Bernstein floor {predicted_floor}"),
    );

    let mut certificate = json!(null);
    if let Some((index, signs)) = &first_survivor {
        let point = scaled_point(signs);
        let recheck = cuts
            .iter()
            .all(|cut| cut.coeffs.dot(&point) <= cut.rhs);
        let expected_dist = rat(n as i64, 36);
        let mut cert_ok = recheck;
        let mut method = "closed-form";
        if n <= EXACT_CERT_MAX_DIM {
            method = "exact";
            let family = make_symmetric_family(t, n)?;
            let family_vertices = vertices(&family)?;
            let dist = nearest_point(&family_vertices, &point)?;
            cert_ok = cert_ok && dist.sq_dist == expected_dist;
            let rows: Vec<LinIneq> = cuts
                .iter()
                .map(|cut| LinIneq::new(cut.coeffs.clone(), cut.rhs.clone()))
                .collect();
            let cut_set = CutSet::certify(&family, rows, "dense-budget")?;
            let budgeted = budgeted_closure(&family, k, &cut_set)?;
            cert_ok = cert_ok && budgeted.contains(&point);
        }
        report.check(
            "survivor-certificate",
            cert_ok,
            format!(
                "survivor {index} at squared distance {} ({method})",
                format_rational(&expected_dist)
            ),
        );
        certificate = json!({
            "sample_index": index,
            "signs": signs,
            "sq_dist_from_reference": format_rational(&expected_dist),
            "method": method,
        });
    }

    let (wilson_lo, wilson_hi) = wilson_interval(survivors, total);
    for (j, cut) in cuts.iter().enumerate() {
        let freq = violations[j] as f64 / total as f64;
        report.samples.push(json!({
            "cut": j,
            "rhs": format_rational(&cut.rhs),
            "violations": violations[j],
            "violation_freq": json_f64(freq),
            "bernstein_bound": json_f64(cut.bound),
        }));
    }
    report.summary = json!({
        "mode": if exhaustive { "exhaustive" } else { "monte-carlo" },
        "evaluated": total,
        "survivors": survivors,
        "survival_freq": json_f64(survival_freq),
        "survival_wilson_99": [json_f64(wilson_lo), json_f64(wilson_hi)],
        "bernstein_total": json_f64(bernstein_total),
        "predicted_survival_floor": json_f64(predicted_floor),
        "survivor_certificate": certificate,
    });
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}
