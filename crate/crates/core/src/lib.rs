//! Exact translate graphs and generalized Delaunay (homothet) graphs of
//! point sets with respect to convex polygonal sets.
//!
//! The convex set is a finite intersection of open or closed half-planes and
//! may be unbounded or lower-dimensional. All arithmetic is rational, every
//! edge carries a placement witness that is re-verified by direct
//! containment, and [`verify::verify_plane`] checks the straight-line
//! drawing for vertex-on-edge contacts and crossings.

pub mod error;
pub mod geometry;
pub mod graph;
pub mod region;
pub mod shape;
mod simplex;
pub mod verify;

pub use error::Error;
pub use geometry::{
    convex_hull, on_closed_segment, orient, rat, segments_cross, Orientation, Point2, Scalar,
    Segment, SegmentContact,
};
pub use graph::{
    build_graph, edge_feasible, is_subgraph, try_build_graph, Edge, GeometricGraph, PointSet,
};
pub use region::{feasible, subtract, ConvexRegion, Feasibility, LinearConstraint};
pub use shape::{
    common_placement, contains, membership_constraints, ConvexShape, HalfPlane, Mode, Placement,
};
pub use verify::{
    face_structure, triangulation_check, verify_plane, FaceStructure, PlanarityReport,
    TriangulationCheck, TriangulationReport,
};
