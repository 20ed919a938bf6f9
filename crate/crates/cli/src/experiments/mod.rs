//! Experiment drivers. Each returns an [`ExperimentReport`] whose named
//! checks decide the process exit code.
//!
//! [`ExperimentReport`]: crate::report::ExperimentReport

pub mod dense_budget;
pub mod directional;
pub mod lp_relax;
pub mod rotation;
pub mod verify;
