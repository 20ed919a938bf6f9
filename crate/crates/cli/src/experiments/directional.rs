//! Directional gap frequencies under Gaussian directions.
//!
//! For the symmetric budgeted box with `t = n/10` and any sparsity
//! `k <= t`, the support gap between the k-sparse closure and the body in a
//! direction `c` is the sum of all absolute coefficients minus the sum of
//! the `t` largest. This experiment samples standard Gaussian directions
//! and estimates how often the gap, normalized by the direction's Euclidean
//! norm, reaches `sqrt(n)/20`, together with auxiliary frequencies for the
//! l1 mass, the top-t mass, and the norm, and the mean absolute coordinate.

use std::time::Instant;

use serde_json::json;

use polysparse_core::RandomSource;

use crate::error::CliError;
use crate::gauss::standard_normal_vec;
use crate::report::{json_f64, wilson_interval, ExperimentReport};

const MAX_DIM: usize = 100_000;
const MAX_SAMPLES: usize = 10_000_000;
/// Sample floor below which the frequency checks are skipped as unstable.
const CHECK_MIN_SAMPLES: usize = 1_000;
/// Draw floor below which the folded-mean check is skipped.
const CHECK_MIN_DRAWS: usize = 100_000;

pub struct DirectionalParams {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
}

pub fn run_directional(params: &DirectionalParams) -> Result<ExperimentReport, CliError> {
    let start = Instant::now();
    let DirectionalParams {
        n,
        t,
        k,
        samples,
        seed,
    } = *params;
    if n < 10 || !n.is_multiple_of(10) {
        return Err(CliError::Input(format!(
            "dimension must be a positive multiple of 10, got {n}"
        )));
    }
    if n > MAX_DIM {
        return Err(CliError::Refusal(format!(
            "directional is capped at n = {MAX_DIM}, got {n}"
        )));
    }
    if t != n / 10 {
        return Err(CliError::Input(format!(
            "this family fixes t = n/10 = {}, got t = {t}",
            n / 10
        )));
    }
    if k == 0 || k > t {
        return Err(CliError::Input(format!(
            "sparsity must satisfy 1 <= k <= t = {t}, got k = {k}"
        )));
    }
    if samples == 0 {
        return Err(CliError::Input("sample count must be positive".into()));
    }
    if samples > MAX_SAMPLES || samples.saturating_mul(n) > 1_000_000_000 {
        return Err(CliError::Refusal(format!(
            "sample budget too large: {samples} samples in dimension {n}"
        )));
    }

    let sqrt_n = (n as f64).sqrt();
    let threshold = sqrt_n / 20.0;
    let mut report = ExperimentReport::new(
        "directional",
        json!({
            "n": n,
            "t": t,
            "k": k,
            "samples": samples,
            "seed": seed,
        }),
    );

    let root = RandomSource::new(seed);
    let mut hits: u64 = 0;
    let mut l1_hits: u64 = 0;
    let mut top_hits: u64 = 0;
    let mut norm_hits: u64 = 0;
    let mut abs_total = 0.0f64;
    for index in 0..samples {
        let mut rng = root.substream(index as u64);
        let g = standard_normal_vec(&mut rng, n);
        let mut mags: Vec<f64> = g.iter().map(|x| x.abs()).collect();
        let l1: f64 = mags.iter().sum();
        abs_total += l1;
        mags.sort_by(|a, b| b.partial_cmp(a).expect("finite magnitudes"));
        let top_t: f64 = mags[..t].iter().sum();
        let gap = l1 - top_t;
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let ratio = gap / norm;
        let success = ratio >= threshold;
        if success {
            hits += 1;
        }
        if l1 >= 0.7 * n as f64 {
            l1_hits += 1;
        }
        if top_t <= 0.6 * n as f64 {
            top_hits += 1;
        }
        if norm <= 2.0 * sqrt_n {
            norm_hits += 1;
        }
        report.samples.push(json!({
            "index": index,
            "gap": json_f64(gap),
            "l1": json_f64(l1),
            "top_t": json_f64(top_t),
            "norm": json_f64(norm),
            "ratio": json_f64(ratio),
            "success": success,
        }));
    }

    let total = samples as u64;
    let freq = hits as f64 / samples as f64;
    let mean_abs = abs_total / (samples as f64 * n as f64);
    let folded = (2.0 / core::f64::consts::PI).sqrt();
    let floor = 1.0 - 4.0 / n as f64;
    if samples >= CHECK_MIN_SAMPLES {
        report.check(
            "gap-frequency-floor",
            freq >= floor,
            format!("normalized gap reached {threshold} with frequency {freq}, floor {floor}"),
        );
    }
    if samples.saturating_mul(n) >= CHECK_MIN_DRAWS {
        report.check(
            "folded-mean",
            (mean_abs - folded).abs() <= 0.01,
            format!("mean absolute coordinate {mean_abs} against {folded}"),
        );
    }

    let wilson = |count: u64| -> serde_json::Value {
        let (lo, hi) = wilson_interval(count, total);
        json!([json_f64(lo), json_f64(hi)])
    };
    report.summary = json!({
        "threshold": json_f64(threshold),
        "gap_freq": json_f64(freq),
        "gap_freq_wilson_99": wilson(hits),
        "gap_freq_floor": json_f64(floor),
        "l1_freq": json_f64(l1_hits as f64 / samples as f64),
        "l1_freq_wilson_99": wilson(l1_hits),
        "top_t_freq": json_f64(top_hits as f64 / samples as f64),
        "top_t_freq_wilson_99": wilson(top_hits),
        "norm_freq": json_f64(norm_hits as f64 / samples as f64),
        "norm_freq_wilson_99": wilson(norm_hits),
        "mean_abs_coordinate": json_f64(mean_abs),
        "folded_normal_mean": json_f64(folded),
    });
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, samples: usize, seed: u64) -> DirectionalParams {
        DirectionalParams {
            n,
            t: n / 10,
            k: n / 10,
            samples,
            seed,
        }
    }

    #[test]
    fn small_case_hits_the_gap_floor() {
        let report = run_directional(&params(20, 2000, 3)).unwrap();
        assert!(report.passed(), "checks: {:?}", report.checks);
        assert_eq!(report.samples.len(), 2000);
    }

    #[test]
    fn runs_are_reproducible_for_a_seed() {
        let a = run_directional(&params(20, 50, 12)).unwrap();
        let b = run_directional(&params(20, 50, 12)).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn family_constraints_are_enforced() {
        assert!(matches!(
            run_directional(&DirectionalParams { n: 20, t: 3, k: 1, samples: 10, seed: 0 }),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            run_directional(&DirectionalParams { n: 20, t: 2, k: 3, samples: 10, seed: 0 }),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            run_directional(&params(15, 10, 0)),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            run_directional(&params(200_000, 10, 0)),
            Err(CliError::Refusal(_))
        ));
    }
}
