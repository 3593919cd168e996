//! Rerouting of edge endings around vertices and the pipeline that turns a
//! straight-line plane drawing into a geometric drawing of a uniform
//! subdivision.

pub mod bend;
pub mod hexagon;
pub mod pipeline;
pub mod refine;

pub use bend::{bend_endings, s_coefficient, BendCheck, BendEdge, BendError, BendPlan, CLEARANCE_TOLERANCE};
pub use hexagon::{find_safe_orientation, OrientationError, RaySystem, RAY_CLEARANCE};
pub use pipeline::{
    minimal_order, step_along, theorem_a_pipeline, EdgeParts, PipelineConfig, PipelineError, PipelineOptions,
};
pub use refine::{refine, RefineError};
