//! Geometric-graph and planarity checks for drawings.
//!
//! Distances are compared in double precision with a band of half-width
//! `1e-9 * r` around `r`: pairs inside the band are reported as boundary
//! pairs, and a boundary pair that is not an edge counts as a violation.
//! Segment crossings are decided with exact orientation predicates.

use std::collections::HashMap;

use serde::Serialize;

use super::drawing::{Drawing, Point};

/// Relative half-width of the boundary band around `r`.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Violation {
    /// Edge endpoints farther apart than `r`.
    LongEdge { u: usize, v: usize, dist: f64 },
    /// Non-adjacent vertices within `r`.
    CloseNonEdge { u: usize, v: usize, dist: f64 },
    /// Two edges meet away from a shared endpoint.
    Crossing { first: (usize, usize), second: (usize, usize) },
    /// An edge polyline meets itself.
    SelfCrossing { edge: (usize, usize) },
    /// An edge drawn with zero length.
    Degenerate { edge: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryPair {
    pub u: usize,
    pub v: usize,
    pub dist: f64,
    pub is_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub r: f64,
    /// Largest distance between adjacent vertices (0 without edges).
    pub max_edge_distance: f64,
    /// Smallest distance between non-adjacent vertices closer than `2r`;
    /// infinite when there is no such pair.
    pub min_non_edge_distance: f64,
    pub boundary_pairs: Vec<BoundaryPair>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn finish(mut self) -> Self {
        self.passed = self.violations.is_empty();
        self
    }
}

fn cell_of(p: Point, size: f64) -> (i64, i64) {
    ((p.x / size).floor() as i64, (p.y / size).floor() as i64)
}

/// Checks that the edges of `d` are exactly the vertex pairs within `d.r`.
pub fn validate_geometric(d: &Drawing) -> ValidationReport {
    let r = d.r;
    let eps = RELATIVE_TOLERANCE * r;
    let mut rep = ValidationReport {
        passed: false,
        r,
        max_edge_distance: 0.0,
        min_non_edge_distance: f64::INFINITY,
        boundary_pairs: Vec::new(),
        violations: Vec::new(),
    };

    for (u, v) in d.graph.edges() {
        let dist = d.coords[u].dist(d.coords[v]);
        rep.max_edge_distance = rep.max_edge_distance.max(dist);
        if dist > r + eps {
            rep.violations.push(Violation::LongEdge { u, v, dist });
        } else if dist >= r - eps {
            rep.boundary_pairs.push(BoundaryPair { u, v, dist, is_edge: true });
        }
    }

    // Cells of side r: any pair within r lies in neighbouring cells.
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &p) in d.coords.iter().enumerate() {
        grid.entry(cell_of(p, r)).or_default().push(i);
    }
    let mut close = Vec::new();
    for (&(cx, cy), members) in &grid {
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(other) = grid.get(&(cx + dx, cy + dy)) else { continue };
                for &u in members {
                    for &v in other {
                        if u >= v || d.graph.has_edge(u, v) {
                            continue;
                        }
                        let dist = d.coords[u].dist(d.coords[v]);
                        rep.min_non_edge_distance = rep.min_non_edge_distance.min(dist);
                        if dist < r - eps {
                            close.push(Violation::CloseNonEdge { u, v, dist });
                        } else if dist <= r + eps {
                            rep.boundary_pairs.push(BoundaryPair { u, v, dist, is_edge: false });
                            close.push(Violation::CloseNonEdge { u, v, dist });
                        }
                    }
                }
            }
        }
    }
    close.sort_by_key(|v| match v {
        Violation::CloseNonEdge { u, v, .. } => (*u, *v),
        _ => unreachable!(),
    });
    rep.violations.extend(close);
    rep.boundary_pairs.sort_by_key(|b| (b.u, b.v));
    rep.finish()
}

/// Sign of the orientation of (a, b, c): 1 counterclockwise, -1 clockwise,
/// 0 collinear. Exact for all finite inputs.
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    let o = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if o > 0.0 {
        1
    } else if o < 0.0 {
        -1
    } else {
        0
    }
}

/// How two closed segments meet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contact {
    Disjoint,
    /// A single common point that is an endpoint of at least one segment.
    Touch(Point),
    /// A single common point interior to both segments.
    Proper,
    /// Collinear with a common part of positive length.
    Overlap,
}

fn lex_less(p: Point, q: Point) -> bool {
    (p.x, p.y) < (q.x, q.y)
}

pub fn segment_contact(a: Point, b: Point, c: Point, d: Point) -> Contact {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0 && o2 == 0 {
        // Collinear: compare along the line using lexicographic order.
        let (a, b) = if lex_less(b, a) { (b, a) } else { (a, b) };
        let (c, d) = if lex_less(d, c) { (d, c) } else { (c, d) };
        let lo = if lex_less(a, c) { c } else { a };
        let hi = if lex_less(b, d) { b } else { d };
        return if lex_less(hi, lo) {
            Contact::Disjoint
        } else if hi == lo {
            Contact::Touch(lo)
        } else {
            Contact::Overlap
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Contact::Disjoint;
    }
    if o1 == 0 {
        Contact::Touch(c)
    } else if o2 == 0 {
        Contact::Touch(d)
    } else if o3 == 0 {
        Contact::Touch(a)
    } else if o4 == 0 {
        Contact::Touch(b)
    } else {
        Contact::Proper
    }
}

struct Seg {
    edge: usize,
    index: usize,
    a: Point,
    b: Point,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

/// Checks that no two edge curves meet except at a shared endpoint.
///
/// Edge curves come from `edge_geometry` when given (one point list per
/// edge in `graph.edges()` order, endpoints included) and from the
/// drawing's own bends otherwise.
pub fn validate_planar_drawing(d: &Drawing, edge_geometry: Option<&[Vec<Point>]>) -> ValidationReport {
    let edges = d.graph.edges();
    let curves: Vec<Vec<Point>> = match edge_geometry {
        Some(g) => {
            assert_eq!(g.len(), edges.len(), "one curve per edge");
            g.to_vec()
        }
        None => edges.iter().map(|&(u, v)| d.edge_points(u, v)).collect(),
    };
    let mut rep = ValidationReport {
        passed: false,
        r: d.r,
        max_edge_distance: 0.0,
        min_non_edge_distance: f64::INFINITY,
        boundary_pairs: Vec::new(),
        violations: Vec::new(),
    };

    let mut segs = Vec::new();
    for (e, pts) in curves.iter().enumerate() {
        for (i, w) in pts.windows(2).enumerate() {
            if w[0] == w[1] {
                rep.violations.push(Violation::Degenerate { edge: edges[e] });
                continue;
            }
            segs.push(Seg {
                edge: e,
                index: i,
                a: w[0],
                b: w[1],
                xmin: w[0].x.min(w[1].x),
                xmax: w[0].x.max(w[1].x),
                ymin: w[0].y.min(w[1].y),
                ymax: w[0].y.max(w[1].y),
            });
        }
    }
    segs.sort_by(|s, t| s.xmin.total_cmp(&t.xmin));

    let shares_vertex = |e: usize, f: usize, p: Point| {
        let (a, b) = edges[e];
        let (c, dd) = edges[f];
        [a, b].iter().any(|&x| (x == c || x == dd) && d.coords[x] == p)
    };

    let mut bad_pairs = Vec::new();
    for i in 0..segs.len() {
        let s = &segs[i];
        for t in &segs[i + 1..] {
            if t.xmin > s.xmax {
                break;
            }
            if t.ymin > s.ymax || t.ymax < s.ymin {
                continue;
            }
            let contact = segment_contact(s.a, s.b, t.a, t.b);
            let both_end = |p: Point| (p == s.a || p == s.b) && (p == t.a || p == t.b);
            let ok = match contact {
                Contact::Disjoint => true,
                Contact::Touch(p) if both_end(p) => {
                    if s.edge == t.edge {
                        s.index.abs_diff(t.index) == 1
                    } else {
                        shares_vertex(s.edge, t.edge, p)
                    }
                }
                _ => false,
            };
            if !ok {
                bad_pairs.push((s.edge.min(t.edge), s.edge.max(t.edge)));
            }
        }
    }
    bad_pairs.sort_unstable();
    bad_pairs.dedup();
    for (e, f) in bad_pairs {
        rep.violations.push(if e == f {
            Violation::SelfCrossing { edge: edges[e] }
        } else {
            Violation::Crossing { first: edges[e], second: edges[f] }
        });
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k2(dist: f64, with_edge: bool) -> Drawing {
        let edges: &[(usize, usize)] = if with_edge { &[(0, 1)] } else { &[] };
        let g = Graph::from_edges(2, edges).unwrap();
        Drawing::new(g, vec![Point::new(0.0, 0.0), Point::new(dist, 0.0)], 1.0).unwrap()
    }

    #[test]
    fn boundary_edge_passes() {
        let rep = validate_geometric(&k2(1.0, true));
        assert!(rep.passed);
        assert_eq!(rep.boundary_pairs.len(), 1);
        assert!(rep.boundary_pairs[0].is_edge);
        assert_eq!(rep.max_edge_distance, 1.0);
    }

    #[test]
    fn missing_edge_fails() {
        let rep = validate_geometric(&k2(1.0, false));
        assert!(!rep.passed);
        assert_eq!(rep.violations.len(), 1);
        let rep = validate_geometric(&k2(1.5, true));
        assert!(matches!(rep.violations[..], [Violation::LongEdge { .. }]));
        assert!(validate_geometric(&k2(1.5, false)).passed);
    }

    #[test]
    fn contacts() {
        let p = Point::new;
        assert_eq!(segment_contact(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)), Contact::Proper);
        assert_eq!(segment_contact(p(0., 0.), p(1., 0.), p(1., 0.), p(1., 1.)), Contact::Touch(p(1., 0.)));
        assert_eq!(segment_contact(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)), Contact::Touch(p(1., 0.)));
        assert_eq!(segment_contact(p(0., 0.), p(2., 0.), p(1., 0.), p(3., 0.)), Contact::Overlap);
        assert_eq!(segment_contact(p(0., 0.), p(1., 0.), p(1., 0.), p(3., 0.)), Contact::Touch(p(1., 0.)));
        assert_eq!(segment_contact(p(0., 0.), p(1., 0.), p(2., 0.), p(3., 0.)), Contact::Disjoint);
        assert_eq!(segment_contact(p(0., 0.), p(1., 1.), p(0., 1.), p(0.4, 0.6)), Contact::Disjoint);
    }

    #[test]
    fn k4_with_crossing() {
        let g = crate::families::complete(4);
        let pts = vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(1., 1.), Point::new(0., 1.)];
        let d = Drawing::new(g, pts, 2.0).unwrap();
        let rep = validate_planar_drawing(&d, None);
        assert_eq!(rep.violations, vec![Violation::Crossing { first: (0, 2), second: (1, 3) }]);
        let mut pts = d.coords.clone();
        pts[3] = Point::new(0.5, 0.3);
        let d = Drawing::new(d.graph.clone(), pts, 2.0).unwrap();
        assert!(validate_planar_drawing(&d, None).passed);
    }

    #[test]
    fn bent_edge_avoids_crossing() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let pts = vec![Point::new(0., 0.), Point::new(2., 0.), Point::new(1., -1.), Point::new(1., 1.)];
        let mut d = Drawing::new(g, pts, 5.0).unwrap();
        assert!(!validate_planar_drawing(&d, None).passed);
        d.set_bends(0, 1, vec![Point::new(1.0, 2.0)]).unwrap();
        d.set_bends(3, 2, vec![Point::new(1.0, 0.5)]).unwrap();
        assert_eq!(d.bends(2, 3), &[Point::new(1.0, 0.5)]);
        assert!(validate_planar_drawing(&d, None).passed);
        // a bend placed on the other edge is a crossing
        d.set_bends(0, 1, vec![Point::new(1.0, 0.75)]).unwrap();
        assert!(!validate_planar_drawing(&d, None).passed);
    }

    #[test]
    fn self_crossing_polyline() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut d = Drawing::new(g, vec![Point::new(0., 0.), Point::new(2., 0.)], 5.0).unwrap();
        d.set_bends(0, 1, vec![Point::new(2., 2.), Point::new(0., 2.)]).unwrap();
        let rep = validate_planar_drawing(&d, None);
        assert_eq!(rep.violations, vec![Violation::SelfCrossing { edge: (0, 1) }]);
    }
}
