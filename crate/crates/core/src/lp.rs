//! Exact two-phase simplex over the rationals.
//!
//! Maximizes a linear functional over an H-polytope with Bland's pivot rule,
//! so every run is deterministic and terminates. Free variables are split
//! into nonnegative pairs; an infeasible start goes through a single
//! artificial variable in phase one. The dictionary stores one column per
//! nonbasic variable, which keeps pivots at `rows * nonbasic` rational
//! operations.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::hpoly::{HPolytope, LinIneq};
use crate::rational::Rational;
use crate::vector::QVector;

/// Exact optimum of an LP: the value and a point attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOptimum {
    pub value: Rational,
    pub argmax: QVector,
}

/// Outcome of maximizing `c · x` over an H-polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpOptimum),
    Infeasible,
    Unbounded,
}

/// Maximizes `c · x` over `p` exactly.
///
/// The argmax satisfies every inequality of `p` in exact arithmetic and the
/// same input always produces the same argmax.
pub fn solve_lp(p: &HPolytope, c: &QVector) -> Result<LpResult, PolyError> {
    if c.dim() != p.dim() {
        return Err(PolyError::DimensionMismatch {
            expected: p.dim(),
            got: c.dim(),
        });
    }
    let rows: Vec<&LinIneq> = p.ineqs().iter().collect();
    Ok(match maximize(p.dim(), &rows, c, None) {
        LpOutcome::Optimal(opt) => LpResult::Optimal(opt),
        LpOutcome::Infeasible => LpResult::Infeasible,
        LpOutcome::Unbounded => LpResult::Unbounded,
        LpOutcome::AboveThreshold(_) => unreachable!("no threshold was set"),
    })
}

/// Like [`LpResult`], with an extra early-exit outcome for callers that only
/// need to know whether the optimum exceeds a threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Optimal(LpOptimum),
    Infeasible,
    Unbounded,
    /// A feasible point with objective value strictly above the requested
    /// threshold; not necessarily optimal.
    AboveThreshold(LpOptimum),
}

/// Core solver over borrowed rows. When `stop_above` is set, returns
/// [`LpOutcome::AboveThreshold`] as soon as the running objective value
/// exceeds it.
pub(crate) fn maximize(
    dim: usize,
    rows: &[&LinIneq],
    c: &QVector,
    stop_above: Option<&Rational>,
) -> LpOutcome {
    debug_assert!(rows.iter().all(|r| r.dim() == dim));
    debug_assert_eq!(c.dim(), dim);
    let m = rows.len();
    let nvars = 2 * dim;
    let aux_id = nvars + m;

    let mut dict = Dictionary {
        basis: (0..m).map(|i| nvars + i).collect(),
        nonbasic: (0..nvars).collect(),
        rhs: rows.iter().map(|r| r.b.clone()).collect(),
        cols: Vec::with_capacity(nvars + 1),
        zcoef: alloc::vec![Rational::zero(); nvars],
        z0: Rational::zero(),
    };
    for k in 0..dim {
        let plus: Vec<Rational> = rows.iter().map(|r| r.a[k].clone()).collect();
        let minus: Vec<Rational> = plus.iter().map(|v| -v.clone()).collect();
        dict.cols.push(plus);
        dict.cols.push(minus);
    }

    if dict.rhs.iter().any(Signed::is_negative) {
        dict.nonbasic.push(aux_id);
        dict.cols.push(alloc::vec![-Rational::one(); m]);
        dict.zcoef.push(-Rational::one());

        let mut start = 0;
        for i in 1..m {
            if dict.rhs[i] < dict.rhs[start] {
                start = i;
            }
        }
        dict.pivot(dict.nonbasic.len() - 1, start);
        loop {
            match dict.bland_step() {
                Some(StepEnd::Optimal) => break,
                Some(StepEnd::Unbounded) => unreachable!("phase one is bounded"),
                None => {}
            }
        }
        if dict.z0.is_negative() {
            return LpOutcome::Infeasible;
        }
        if let Some(r) = (0..dict.basis.len()).find(|&i| dict.basis[i] == aux_id) {
            debug_assert!(dict.rhs[r].is_zero());
            let mut enter: Option<(usize, usize)> = None;
            for (j, &v) in dict.nonbasic.iter().enumerate() {
                if v != aux_id
                    && !dict.cols[j][r].is_zero()
                    && enter.is_none_or(|(ev, _)| v < ev)
                {
                    enter = Some((v, j));
                }
            }
            match enter {
                Some((_, j)) => dict.pivot(j, r),
                None => dict.drop_row(r),
            }
        }
        let slot = dict
            .nonbasic
            .iter()
            .position(|&v| v == aux_id)
            .expect("artificial variable is nonbasic after phase one");
        dict.nonbasic.swap_remove(slot);
        dict.cols.swap_remove(slot);
    }

    dict.zcoef = alloc::vec![Rational::zero(); dict.cols.len()];
    dict.z0 = Rational::zero();
    let mut basic_row = alloc::vec![None; nvars];
    let mut nonbasic_slot = alloc::vec![None; nvars];
    for (i, &v) in dict.basis.iter().enumerate() {
        if v < nvars {
            basic_row[v] = Some(i);
        }
    }
    for (j, &v) in dict.nonbasic.iter().enumerate() {
        if v < nvars {
            nonbasic_slot[v] = Some(j);
        }
    }
    for k in 0..dim {
        if c[k].is_zero() {
            continue;
        }
        for (var, gamma) in [(2 * k, c[k].clone()), (2 * k + 1, -c[k].clone())] {
            if let Some(j) = nonbasic_slot[var] {
                dict.zcoef[j] += gamma;
            } else {
                let i = basic_row[var].expect("split variable is basic or nonbasic");
                let dz = &gamma * &dict.rhs[i];
                dict.z0 += dz;
                for j in 0..dict.cols.len() {
                    if dict.cols[j][i].is_zero() {
                        continue;
                    }
                    let d = &gamma * &dict.cols[j][i];
                    dict.zcoef[j] -= d;
                }
            }
        }
    }

    loop {
        if let Some(threshold) = stop_above {
            if dict.z0 > *threshold {
                return LpOutcome::AboveThreshold(dict.optimum(dim));
            }
        }
        match dict.bland_step() {
            Some(StepEnd::Optimal) => return LpOutcome::Optimal(dict.optimum(dim)),
            Some(StepEnd::Unbounded) => return LpOutcome::Unbounded,
            None => {}
        }
    }
}

enum StepEnd {
    Optimal,
    Unbounded,
}

/// Simplex dictionary: `x_basis[i] = rhs[i] - sum_j cols[j][i] * x_nonbasic[j]`
/// and `z = z0 + sum_j zcoef[j] * x_nonbasic[j]`.
struct Dictionary {
    basis: Vec<usize>,
    nonbasic: Vec<usize>,
    rhs: Vec<Rational>,
    cols: Vec<Vec<Rational>>,
    zcoef: Vec<Rational>,
    z0: Rational,
}

impl Dictionary {
    /// One Bland step: returns the terminal state, or None after a pivot.
    fn bland_step(&mut self) -> Option<StepEnd> {
        let mut enter: Option<(usize, usize)> = None;
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if self.zcoef[j].is_positive() && enter.is_none_or(|(ev, _)| v < ev) {
                enter = Some((v, j));
            }
        }
        let Some((_, e)) = enter else {
            return Some(StepEnd::Optimal);
        };
        let mut leave: Option<(Rational, usize, usize)> = None;
        for i in 0..self.basis.len() {
            let coef = &self.cols[e][i];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / coef;
            let better = match &leave {
                None => true,
                Some((best, best_var, _)) => {
                    ratio < *best || (ratio == *best && self.basis[i] < *best_var)
                }
            };
            if better {
                leave = Some((ratio, self.basis[i], i));
            }
        }
        let Some((_, _, r)) = leave else {
            return Some(StepEnd::Unbounded);
        };
        self.pivot(e, r);
        None
    }

    /// Exchanges nonbasic slot `e` with the basic variable of row `r`.
    fn pivot(&mut self, e: usize, r: usize) {
        let p = self.cols[e][r].clone();
        debug_assert!(!p.is_zero());
        let col_e = core::mem::take(&mut self.cols[e]);

        let rhs_r = &self.rhs[r] / &p;
        if !rhs_r.is_zero() {
            for (i, ce) in col_e.iter().enumerate() {
                if i == r || ce.is_zero() {
                    continue;
                }
                let d = ce * &rhs_r;
                self.rhs[i] -= d;
            }
            if !self.zcoef[e].is_zero() {
                let dz = &self.zcoef[e] * &rhs_r;
                self.z0 += dz;
            }
        }
        self.rhs[r] = rhs_r;

        for j in 0..self.cols.len() {
            if j == e || self.cols[j][r].is_zero() {
                continue;
            }
            let g = &self.cols[j][r] / &p;
            for (i, ce) in col_e.iter().enumerate() {
                if i == r || ce.is_zero() {
                    continue;
                }
                let d = ce * &g;
                self.cols[j][i] -= d;
            }
            if !self.zcoef[e].is_zero() {
                let dz = &self.zcoef[e] * &g;
                self.zcoef[j] -= dz;
            }
            self.cols[j][r] = g;
        }

        let mut entering_col = col_e;
        for (i, v) in entering_col.iter_mut().enumerate() {
            if i == r || v.is_zero() {
                continue;
            }
            let negated = -(&*v / &p);
            *v = negated;
        }
        entering_col[r] = p.recip();
        self.cols[e] = entering_col;
        let ze = -(&self.zcoef[e] / &p);
        self.zcoef[e] = ze;

        core::mem::swap(&mut self.basis[r], &mut self.nonbasic[e]);
    }

    /// Removes a vacuous row whose basic variable is identically zero.
    fn drop_row(&mut self, r: usize) {
        self.basis.remove(r);
        self.rhs.remove(r);
        for col in &mut self.cols {
            col.remove(r);
        }
    }

    /// Reads the original-space point and objective value out of the
    /// dictionary.
    fn optimum(&self, dim: usize) -> LpOptimum {
        let nvars = 2 * dim;
        let mut split = alloc::vec![Rational::zero(); nvars];
        for (i, &v) in self.basis.iter().enumerate() {
            if v < nvars {
                split[v] = self.rhs[i].clone();
            }
        }
        let argmax = QVector((0..dim).map(|k| &split[2 * k] - &split[2 * k + 1]).collect());
        LpOptimum {
            value: self.z0.clone(),
            argmax,
        }
    }
}
