//! Plane geometry: points and polylines, the zigzag path γ_k, drawings of
//! graphs and their validators.

pub mod drawing;
pub mod gamma;
pub mod point;
pub mod validate;

pub use drawing::{Drawing, DrawingError, Point};
pub use gamma::{adjust_gamma_length, build_gamma, gamma_params, GammaError, GammaParams, GammaPath, SegmentRole};
pub use point::{angle_at, angular_distance, normalize_angle, Point2, Polyline, Scalar, Segment};
pub use validate::{
    orient, segment_contact, validate_geometric, validate_planar_drawing, BoundaryPair, Contact, ValidationReport,
    Violation,
};

impl GammaPath<f64> {
    /// The path as a drawing with parameter r_k |AB|.
    pub fn to_drawing(&self) -> Drawing {
        Drawing::path(self.vertices.clone(), self.parameter()).expect("gamma vertices are finite")
    }
}
