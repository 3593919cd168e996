//! Uniform refinement of a geometric drawing with straight edges.

use thiserror::Error;

use crate::geometry::{Drawing, DrawingError};
use crate::graph::{subdivide, subdivision_vertex, GraphError};

#[derive(Debug, Error)]
pub enum RefineError {
    #[error("refinement factor must be positive")]
    ZeroFactor,
    #[error("edge {0}-{1} is bent; only straight edges can be refined")]
    BentEdge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// Splits every edge of `d` into `m` equal pieces; the parameter becomes
/// `r / m`. Each new vertex lies on the segment it subdivides.
pub fn refine(d: &Drawing, m: usize) -> Result<Drawing, RefineError> {
    if m == 0 {
        return Err(RefineError::ZeroFactor);
    }
    if let Some((&(u, v), _)) = d.bent_edges().next() {
        return Err(RefineError::BentEdge(u, v));
    }
    let g = subdivide(&d.graph, m)?;
    let n = d.graph.n();
    let mut coords = d.coords.clone();
    coords.resize(g.n(), d.coords.first().copied().unwrap_or_default());
    for (e, (u, v)) in d.graph.edges().into_iter().enumerate() {
        for i in 1..m {
            coords[subdivision_vertex(n, m, e, i)] = d.coords[u].lerp(d.coords[v], i as f64 / m as f64);
        }
    }
    let out = Drawing::new(g, coords, d.r / m as f64)?;
    Ok(match &d.provenance {
        Some(p) => out.with_provenance(format!("{p}, refined by {m}")),
        None => out,
    })
}
