//! Instance files, random instance generation, sampling cross-checks, SVG
//! drawings and the fuzzing drivers behind the `homoplane` binary.

pub mod fuzz;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod svg;

pub use homoplane_core as core;
pub use homoplane_core::{
    build_graph, try_build_graph, verify_plane, ConvexShape, GeometricGraph, Mode, Placement,
    Point2, PointSet, Scalar,
};
pub use instance::{emit_instance, emit_witnesses, parse_instance, Instance, ParseError};
