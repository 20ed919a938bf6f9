use alloc::string::String;
use core::fmt;

/// Errors shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Operand dimensions do not agree, or an index set is out of range.
    DimensionMismatch { expected: usize, got: usize },
    /// A parameter is outside the range an operation accepts.
    InvalidInput(String),
    /// The operation requires a bounded polytope and the input is not.
    Unbounded,
    /// The operation requires a nonempty polytope and the input is empty.
    Infeasible,
    /// The operation requires the origin in the interior of the input.
    OriginNotInterior,
    /// The operation requires a full-dimensional polytope.
    Degenerate,
    /// A cut claimed valid is violated; carries the offending cut's index
    /// and a display of the inequality.
    InvalidCut { index: usize, cut: String },
    /// The instance is beyond the size this exact pipeline accepts.
    ResourceRefusal(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    Internal(&'static str),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            PolyError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            PolyError::Unbounded => write!(f, "polytope is unbounded"),
            PolyError::Infeasible => write!(f, "polytope is empty"),
            PolyError::OriginNotInterior => write!(f, "origin is not interior to the polytope"),
            PolyError::Degenerate => write!(f, "polytope is not full-dimensional"),
            PolyError::InvalidCut { index, cut } => {
                write!(f, "cut {index} is not valid for the polytope: {cut}")
            }
            PolyError::ResourceRefusal(msg) => write!(f, "instance too large for exact pipeline: {msg}"),
            PolyError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for PolyError {}
