//! Command-line companion to `polysparse-core`: file formats, experiment
//! drivers, and structured reporting.

pub mod error;
pub mod experiments;
pub mod formats;
pub mod gauss;
pub mod report;
