//! Geometric graphs of small cop number.
//!
//! The crate builds plane drawings of subdivided planar graphs that are
//! geometric (vertices are adjacent exactly when they lie within a fixed
//! distance `r`), validates them, and decides cop numbers with an exact
//! backward-induction solver.

pub mod bender;
pub mod constructions;
pub mod families;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod solver;

pub use geometry::{
    build_gamma, gamma_params, validate_geometric, validate_planar_drawing, Drawing, Point, Point2, Polyline, Segment,
    ValidationReport,
};
pub use graph::{clique_substitute, girth, girth_lower_bound, subdivide, Graph, GraphError, Origin};
pub use solver::{cop_number, is_k_copwin, CopNumber, GameState, SolveOptions, SolveResult, Turn};

/// Single-precision point.
pub type Point32 = Point2<f32>;
