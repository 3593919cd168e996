use std::collections::BTreeMap;

use thiserror::Error;

use super::point::{Point2, Polyline};
use crate::graph::{Graph, GraphError};

pub type Point = Point2<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DrawingError {
    #[error("expected {expected} coordinates, got {got}")]
    CoordCount { expected: usize, got: usize },
    #[error("parameter r must be positive and finite, got {0}")]
    BadParameter(f64),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph together with a position per vertex and the parameter `r`.
///
/// Edges are straight segments unless a bend list is recorded for them;
/// bend points are stored in the direction from the smaller endpoint id.
#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    pub graph: Graph,
    pub coords: Vec<Point>,
    pub r: f64,
    bends: BTreeMap<(usize, usize), Vec<Point>>,
    pub provenance: Option<String>,
}

impl Drawing {
    pub fn new(graph: Graph, coords: Vec<Point>, r: f64) -> Result<Self, DrawingError> {
        if coords.len() != graph.n() {
            return Err(DrawingError::CoordCount { expected: graph.n(), got: coords.len() });
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(DrawingError::BadParameter(r));
        }
        if let Some(v) = coords.iter().position(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(DrawingError::NonFinite(v));
        }
        Ok(Drawing { graph, coords, r, bends: BTreeMap::new(), provenance: None })
    }

    /// Path through `points` in order.
    pub fn path(points: Vec<Point>, r: f64) -> Result<Self, DrawingError> {
        let n = points.len();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Drawing::new(Graph::from_edges(n, &edges)?, points, r)
    }

    pub fn with_provenance(mut self, s: impl Into<String>) -> Self {
        self.provenance = Some(s.into());
        self
    }

    /// Records interior bend points of edge uv, listed from u to v.
    pub fn set_bends(&mut self, u: usize, v: usize, mut pts: Vec<Point>) -> Result<(), DrawingError> {
        if u >= self.graph.n() || v >= self.graph.n() || !self.graph.has_edge(u, v) {
            return Err(DrawingError::NotAnEdge(u, v));
        }
        if let Some(i) = pts.iter().position(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(DrawingError::NonFinite(i));
        }
        if u > v {
            pts.reverse();
        }
        let key = (u.min(v), u.max(v));
        if pts.is_empty() {
            self.bends.remove(&key);
        } else {
            self.bends.insert(key, pts);
        }
        Ok(())
    }

    /// Interior bend points of edge uv listed from the smaller id.
    pub fn bends(&self, u: usize, v: usize) -> &[Point] {
        self.bends.get(&(u.min(v), u.max(v))).map_or(&[], Vec::as_slice)
    }

    pub fn bent_edges(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Point>)> {
        self.bends.iter()
    }

    /// Points of edge uv from u to v, including the endpoints.
    pub fn edge_points(&self, u: usize, v: usize) -> Vec<Point> {
        let mut pts = vec![self.coords[u.min(v)]];
        pts.extend_from_slice(self.bends(u, v));
        pts.push(self.coords[u.max(v)]);
        if u > v {
            pts.reverse();
        }
        pts
    }

    pub fn edge_polyline(&self, u: usize, v: usize) -> Option<Polyline<f64>> {
        Polyline::new(self.edge_points(u, v))
    }

    /// (min, max) corners of the bounding box of vertices and bends.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut it = self.coords.iter().chain(self.bends.values().flatten());
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y)))
        }))
    }
}
