//! Exact rational polyhedral computation.
//!
//! Everything here runs over arbitrary-precision rationals: linear
//! programming, projection, vertex/facet conversion, sparse closures,
//! symmetrization, and exact squared distances between nested polytopes.
//! There is no floating point in any geometric predicate; floats appear
//! only in reporting helpers that callers opt into.
//!
//! The crate is `no_std` with `alloc`, so the same code serves both the
//! command-line tools and embedded test harnesses.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod closure;
pub mod convert;
pub mod error;
pub mod families;
pub mod hpoly;
pub mod lp;
pub mod matrix;
pub mod metrics;
pub mod project;
pub mod rational;
pub mod rng;
mod subsets;
pub mod vector;
pub mod vpoly;

pub use closure::{budgeted_closure, is_down_monotone, sparse_closure, symmetrize, ClosureSpec, CutSet};
pub use convert::{facets, polar, vertices};
pub use error::PolyError;
pub use families::{
    bernstein_bound, closed_form_gap_sym, closed_form_gap_sym_exact, closed_form_sq_dist,
    make_qn, make_simplex_family, make_symmetric_closure, make_symmetric_family, FamilyParams,
};
pub use hpoly::{equal, HPolytope, LinIneq};
pub use lp::{solve_lp, LpOptimum, LpResult};
pub use matrix::{cayley_rotation, QMatrix};
pub use metrics::{
    gap, hausdorff_sq, nearest_point, support, verify_dist_gap, DistanceResult, GapCheck,
    GapRecord,
};
pub use project::project;
pub use rational::{format_rational, parse_rational, rat, rat_int, to_f64, Rational};
pub use rng::RandomSource;
pub use vector::QVector;
pub use vpoly::VPolytope;
