use thiserror::Error;

use crate::geometry::Point2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(Point2),
    #[error("linear constraint has all-zero coefficients")]
    ZeroConstraint,
    #[error("half-plane normal is zero")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported parameter-space dimension {0}")]
    UnsupportedDimension(usize),
    #[error("duplicate point {point} at indices {first} and {second}")]
    DuplicatePoint {
        point: Point2,
        first: usize,
        second: usize,
    },
    #[error("graphs are built on different point sets or shapes")]
    MismatchedGraphs,
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("witness for edge ({i}, {j}) failed verification: {detail}")]
    WitnessRejected { i: usize, j: usize, detail: String },
    #[error("scale must be positive")]
    NonPositiveScale,
}
