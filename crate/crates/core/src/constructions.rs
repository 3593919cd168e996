//! Named constructions: a plane embedding of the dodecahedron, a geometric
//! drawing of its 15-fold subdivision with parameter 2, and the knot graph
//! used for graphs of maximum degree at most nine.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::families::{self, dodeca};
use crate::geometry::{Drawing, Point};
use crate::graph::{clique_substitute, subdivide, subdivision_vertex, Graph, Origin};

/// Subdivision length used by [`build_dodec440`].
pub const DODEC_SUBDIVISION: usize = 15;
/// Parameter of the drawing returned by [`build_dodec440`].
pub const DODEC_PARAMETER: f64 = 2.0;

/// Rotation template for one fifth of the 440-vertex drawing: the vertices
/// I0, M0, M1, O0, followed by the 14 interior points of each sector edge
/// (in [`dodeca::sector_edges`] order, listed from the first endpoint).
const SECTOR: &str = include_str!("../data/dodec_sector.txt");

fn rotated(p: Point, i: usize) -> Point {
    p.rotate(2.0 * PI * i as f64 / 5.0)
}

/// The dodecahedron with a fixed straight-line plane embedding: an inner
/// pentagon, a ten-cycle alternating between two radii, and an outer
/// pentagon.
pub fn dodecahedron() -> (Graph, Drawing) {
    let g = families::dodecahedron();
    let mut coords = vec![Point::new(0.0, 0.0); 20];
    for i in 0..5 {
        let a = PI / 2.0 + 2.0 * PI * i as f64 / 5.0;
        let b = a - PI / 5.0;
        coords[dodeca::inner(i)] = Point::polar(a);
        coords[dodeca::middle(2 * i + 1)] = Point::polar(a) * 2.2;
        coords[dodeca::middle(2 * i)] = Point::polar(b) * 2.6;
        coords[dodeca::outer(i)] = Point::polar(b) * 3.8;
    }
    let d = Drawing::new(g.clone(), coords, 1.0)
        .expect("twenty finite coordinates")
        .with_provenance("dodecahedron, three-ring embedding");
    (g, d)
}

/// The subdivision of the dodecahedron in which every edge becomes a path
/// of 15 edges, drawn as a geometric graph with parameter 2: 440 vertices
/// and 450 edges.
pub fn build_dodec440() -> Drawing {
    let l = DODEC_SUBDIVISION;
    let template: Vec<Point> = SECTOR
        .lines()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let mut it = s.split_whitespace().map(|t| t.parse::<f64>().expect("numeric template"));
            Point::new(it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(template.len(), 4 + 6 * (l - 1));

    let base = families::dodecahedron();
    let edges = base.edges();
    let g = subdivide(&base, l).expect("positive length");
    let mut coords = vec![Point::new(0.0, 0.0); g.n()];
    for i in 0..5 {
        let originals = [dodeca::inner(i), dodeca::middle(2 * i), dodeca::middle(2 * i + 1), dodeca::outer(i)];
        for (s, &v) in originals.iter().enumerate() {
            coords[v] = rotated(template[s], i);
        }
        for (k, (u, v)) in dodeca::sector_edges(i).into_iter().enumerate() {
            let key = (u.min(v), u.max(v));
            let e = edges.binary_search(&key).expect("sector edge exists");
            for j in 1..l {
                let index = if u < v { j } else { l - j };
                coords[subdivision_vertex(20, l, e, index)] = rotated(template[4 + k * (l - 1) + j - 1], i);
            }
        }
    }
    Drawing::new(g, coords, DODEC_PARAMETER)
        .expect("440 finite coordinates")
        .with_provenance("dodecahedron subdivided 15 times, parameter 2")
}

/// Largest knot size that fits on a ring of ports, `pi / asin(1/3)`.
pub fn knot_ring_bound() -> f64 {
    PI / (1.0f64 / 3.0).asin()
}

/// Whether `n` ports of a knot can be placed around a ring keeping the
/// outer ports of neighboring endings more than `r` apart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KnotRingCheck {
    /// Length scale of the ring; the condition is scale free.
    pub r: f64,
    pub n: usize,
    pub bound: f64,
    pub feasible: bool,
}

pub fn knot_ring_feasible(n: usize) -> KnotRingCheck {
    let bound = knot_ring_bound();
    KnotRingCheck { r: 1.0, n, bound, feasible: (n as f64) < bound }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KnotGraphError {
    #[error("vertex {vertex} has degree {degree}; knots of more than {max} ports do not fit on a ring (bound {bound:.4})", max = .bound.floor())]
    DegreeTooLarge { vertex: usize, degree: usize, bound: f64 },
    #[error("subdivision length must be positive")]
    ZeroLength,
}

/// Clique substitution with every edge between knots replaced by a path of
/// length `l_out`.
#[derive(Clone, Debug)]
pub struct TheoremBOutput {
    pub graph: Graph,
    /// Port ids of each original vertex, in sorted neighbor order.
    pub knots: Vec<Vec<usize>>,
    pub l_out: usize,
}

pub fn theorem_b_combinatorial(g: &Graph, l_out: usize) -> Result<TheoremBOutput, KnotGraphError> {
    if l_out == 0 {
        return Err(KnotGraphError::ZeroLength);
    }
    for v in 0..g.n() {
        if !knot_ring_feasible(g.degree(v)).feasible {
            return Err(KnotGraphError::DegreeTooLarge { vertex: v, degree: g.degree(v), bound: knot_ring_bound() });
        }
    }
    let k = clique_substitute(g);
    let ports = k.n();
    let mut knots = vec![Vec::new(); g.n()];
    for p in 0..ports {
        if let Origin::Port { knot, .. } = k.label(p) {
            knots[knot].push(p);
        }
    }
    let port_of = |v: usize, w: usize| knots[v][g.neighbors(v).binary_search(&w).unwrap()];

    let edges = g.edges();
    let total = ports + edges.len() * (l_out - 1);
    let mut list: Vec<(usize, usize)> = Vec::new();
    for v in 0..ports {
        for &w in k.neighbors(v) {
            let same = matches!((k.label(v), k.label(w)), (Origin::Port { knot: a, .. }, Origin::Port { knot: b, .. }) if a == b);
            if v < w && same {
                list.push((v, w));
            }
        }
    }
    let mut labels: Vec<Origin> = (0..ports).map(|p| k.label(p)).collect();
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = port_of(u, v);
        for i in 1..l_out {
            let w = subdivision_vertex(ports, l_out, e, i);
            labels.push(Origin::Subdivision { edge: e, index: i });
            list.push((prev, w));
            prev = w;
        }
        list.push((prev, port_of(v, u)));
    }
    let graph = Graph::from_edges(total, &list).expect("simple knot graph").with_labels(labels);
    Ok(TheoremBOutput { graph, knots, l_out })
}
