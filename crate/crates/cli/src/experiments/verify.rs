//! Verification suite: runs the library's structural identities end to end
//! on small instances and reports one named pass/fail check per group.
//!
//! Groups, each sized by `max_n`:
//! - unit-budget and half-budget distances against their closed forms,
//! - symmetric families and closures against their display descriptions,
//! - the distance-gap identity and bound on sampled directions,
//! - reflection laws for down-monotone bodies (closure commutes with
//!   symmetrization, restriction to the nonnegative orthant recovers the
//!   original closure, the symmetrization is the union of reflections on a
//!   grid),
//! - the exact closed-form support gap on sampled rational directions.
//!
//! The hidden `inject_bug` flag corrupts one display polytope before the
//! comparison, as a self-test that a genuine mismatch fails the suite.

use std::time::Instant;

use serde_json::json;

use polysparse_core::{
    closed_form_gap_sym_exact, closed_form_sq_dist, equal, format_rational, gap, hausdorff_sq,
    is_down_monotone, make_qn, make_simplex_family, make_symmetric_closure, make_symmetric_family,
    rat, rat_int, sparse_closure, symmetrize, verify_dist_gap, HPolytope, LinIneq, QVector,
    RandomSource, Rational,
};

use crate::error::CliError;
use crate::report::ExperimentReport;

const MAX_N_CAP: usize = 6;
/// Display comparisons above this dimension grow too many projections.
const DISPLAY_MAX_N: usize = 5;
/// Vertex-heavy groups are capped lower than the distance groups.
const CORPUS_MAX_N: usize = 4;
const MAX_VERIFY_SAMPLES: usize = 1_000_000;

pub struct VerifyParams {
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    pub inject_bug: bool,
}

fn nonneg_orthant(n: usize) -> Vec<LinIneq> {
    (0..n)
        .map(|i| {
            let mut coeffs = vec![0i64; n];
            coeffs[i] = -1;
            LinIneq::from_ints(&coeffs, 0)
        })
        .collect()
}

fn keep_list(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| (mask >> i) & 1 == 1).collect()
}

/// Grid of 9 points per axis covering `[-1, 1]^n` in quarter steps.
fn grid_points(n: usize) -> Vec<QVector> {
    let total = 9u64.pow(n as u32);
    let mut points = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut digits = code;
        let coords: Vec<Rational> = (0..n)
            .map(|_| {
                let d = (digits % 9) as i64;
                digits /= 9;
                rat(d - 4, 4)
            })
            .collect();
        points.push(QVector(coords));
    }
    points
}

fn distance_group(
    report: &mut ExperimentReport,
    label: &str,
    t: usize,
    n: usize,
) -> Result<(), CliError> {
    let p = make_simplex_family(t, n)?;
    let mut ok = true;
    let mut detail = format!("all k up to {n} match the closed form");
    for k in 1..=n {
        let closure = sparse_closure(&p, k)?;
        let dist = hausdorff_sq(&p, &closure)?;
        let expected = closed_form_sq_dist(t, n, k)?;
        if dist.sq_dist != expected {
            ok = false;
            detail = format!(
                "k={k}: got {} expected {}",
                format_rational(&dist.sq_dist),
                format_rational(&expected)
            );
            break;
        }
    }
    report.check(format!("{label}-n{n}"), ok, detail);
    Ok(())
}

fn display_group(
    report: &mut ExperimentReport,
    n: usize,
    inject_bug: &mut bool,
) -> Result<(), CliError> {
    let mut ok = true;
    let mut detail = format!("all budgets and sparsities in dimension {n} match their displays");
    'outer: for t in 1..=n {
        let sym = symmetrize(&make_simplex_family(t, n)?)?;
        if !equal(&sym, &make_symmetric_family(t, n)?) {
            ok = false;
            detail = format!("t={t}: symmetrization differs from its display");
            break;
        }
        for k in 1..=n {
            let closure = sparse_closure(&sym, k)?;
            let mut display = make_symmetric_closure(t, n, k)?;
            if *inject_bug {
                let mut rows = display.into_ineqs();
                let bumped = &rows[0].b + rat_int(1);
                rows[0].b = bumped;
                display = HPolytope::new(n, rows)?;
                *inject_bug = false;
            }
            if !equal(&closure, &display) {
                ok = false;
                detail = format!("t={t} k={k}: closure differs from its display");
                break 'outer;
            }
        }
    }
    report.check(format!("symmetric-displays-n{n}"), ok, detail);
    Ok(())
}

fn gap_bound_group(
    report: &mut ExperimentReport,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<(), CliError> {
    let mut budgets = vec![1];
    if n.div_ceil(2) > 1 {
        budgets.push(n.div_ceil(2));
    }
    let mut ok = true;
    let mut detail = format!("witness identity and bound hold on {samples} directions per pair");
    'outer: for t in budgets {
        let p = make_simplex_family(t, n)?;
        for k in 1..=n {
            let closure = sparse_closure(&p, k)?;
            let check = verify_dist_gap(&p, &closure, samples, seed)?;
            if !check.witness_identity_holds || check.violations != 0 {
                ok = false;
                detail = format!(
                    "t={t} k={k}: identity {} with {} violations",
                    check.witness_identity_holds, check.violations
                );
                break 'outer;
            }
        }
    }
    report.check(format!("gap-bound-n{n}"), ok, detail);
    Ok(())
}

fn reflection_group(report: &mut ExperimentReport, n: usize) -> Result<(), CliError> {
    let mut corpus = vec![make_simplex_family(1, n)?];
    if n.div_ceil(2) > 1 {
        corpus.push(make_simplex_family(n.div_ceil(2), n)?);
    }
    if n.is_multiple_of(2) {
        corpus.push(make_qn(n)?);
    }
    let orthant = nonneg_orthant(n);
    let grid = grid_points(n);
    let mut ok = true;
    let mut detail = format!("reflection laws hold for {} bodies", corpus.len());
    'outer: for (member, p) in corpus.iter().enumerate() {
        if !is_down_monotone(p)? {
            ok = false;
            detail = format!("body {member} is not down-monotone");
            break;
        }
        let sym = symmetrize(p)?;
        for k in 1..=n {
            let closure = sparse_closure(p, k)?;
            let sym_closure = sparse_closure(&sym, k)?;
            if !equal(&sym_closure, &symmetrize(&closure)?) {
                ok = false;
                detail = format!("body {member} k={k}: closure does not commute with symmetrization");
                break 'outer;
            }
            let mut restricted_rows = sym_closure.into_ineqs();
            restricted_rows.extend(orthant.iter().cloned());
            let restricted = HPolytope::new(n, restricted_rows)?;
            if !equal(&restricted, &closure) {
                ok = false;
                detail = format!(
                    "body {member} k={k}: orthant restriction does not recover the closure"
                );
                break 'outer;
            }
        }
        for x in &grid {
            let in_sym = sym.contains(x);
            let in_union = (0..(1u64 << n)).any(|mask| p.contains(&x.reflect(&keep_list(mask, n))));
            if in_sym != in_union {
                ok = false;
                detail = format!("body {member}: union of reflections differs on the grid");
                break 'outer;
            }
        }
    }
    report.check(format!("reflection-laws-n{n}"), ok, detail);
    Ok(())
}

fn closed_form_gap_group(report: &mut ExperimentReport, seed: u64) -> Result<(), CliError> {
    let (t, n) = (2usize, 5usize);
    let inner = symmetrize(&make_simplex_family(t, n)?)?;
    let root = RandomSource::new(seed);
    let mut ok = true;
    let mut detail = "closed-form gap matches the LP gap on 100 rational directions".to_string();
    'outer: for k in 1..=t {
        let outer = sparse_closure(&inner, k)?;
        for i in 0..100u64 {
            let mut rng = root.substream(i);
            let c = loop {
                let candidate = QVector(
                    (0..n)
                        .map(|_| rat(rng.int_in(-9, 9), rng.int_in(1, 9)))
                        .collect(),
                );
                if !candidate.is_zero() {
                    break candidate;
                }
            };
            let record = gap(&inner, &outer, &c)?;
            let expected = closed_form_gap_sym_exact(t, n, k, &c)?;
            if record.gap != expected {
                ok = false;
                detail = format!(
                    "k={k} direction {i}: gap {} expected {}",
                    format_rational(&record.gap),
                    format_rational(&expected)
                );
                break 'outer;
            }
        }
    }
    report.check("gap-closed-form", ok, detail);
    Ok(())
}

pub fn run_verify(params: &VerifyParams) -> Result<ExperimentReport, CliError> {
    let start = Instant::now();
    let VerifyParams {
        max_n,
        samples,
        seed,
        inject_bug,
    } = *params;
    if max_n < 2 {
        return Err(CliError::Input(format!(
            "max dimension must be at least 2, got {max_n}"
        )));
    }
    if max_n > MAX_N_CAP {
        return Err(CliError::Refusal(format!(
            "verify is capped at max_n = {MAX_N_CAP}, got {max_n}"
        )));
    }
    if samples > MAX_VERIFY_SAMPLES {
        return Err(CliError::Refusal(format!(
            "direction sample count is capped at {MAX_VERIFY_SAMPLES}, got {samples}"
        )));
    }

    let mut report = ExperimentReport::new(
        "verify",
        json!({
            "max_n": max_n,
            "samples": samples,
            "seed": seed,
            "inject_bug": inject_bug,
        }),
    );

    for n in 2..=max_n {
        distance_group(&mut report, "unit-budget-distance", 1, n)?;
    }
    for n in (2..=max_n).filter(|n| n.is_multiple_of(2)) {
        distance_group(&mut report, "half-budget-distance", n / 2, n)?;
    }
    let mut pending_bug = inject_bug;
    for n in 2..=max_n.min(DISPLAY_MAX_N) {
        display_group(&mut report, n, &mut pending_bug)?;
    }
    for n in 2..=max_n.min(CORPUS_MAX_N) {
        gap_bound_group(&mut report, n, samples, seed)?;
    }
    for n in 2..=max_n.min(CORPUS_MAX_N) {
        reflection_group(&mut report, n)?;
    }
    if max_n >= 5 {
        closed_form_gap_group(&mut report, seed)?;
    }

    let passed = report.checks.iter().filter(|c| c.passed).count();
    report.summary = json!({
        "checks_total": report.checks.len(),
        "checks_passed": passed,
        "all_passed": report.passed(),
    });
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(max_n: usize) -> VerifyParams {
        VerifyParams {
            max_n,
            samples: 20,
            seed: 0,
            inject_bug: false,
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run_verify(&params(3)).unwrap();
        assert!(report.passed(), "checks: {:?}", report.checks);
        assert!(report.checks.len() >= 6);
    }

    #[test]
    fn injected_bug_is_caught() {
        let mut p = params(2);
        p.inject_bug = true;
        let report = run_verify(&p).unwrap();
        assert!(!report.passed());
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1);
        assert!(failed[0].name.starts_with("symmetric-displays"));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(run_verify(&params(1)), Err(CliError::Input(_))));
        assert!(matches!(run_verify(&params(7)), Err(CliError::Refusal(_))));
    }
}
