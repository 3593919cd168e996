//! From a straight-line plane drawing of maximum degree at most 5 to a
//! geometric drawing of a uniform subdivision of the same graph.
//!
//! Every edge is cut into an initial part, a middle part made of `lambda`
//! segments of length `a`, and a terminal part. Endings are rerouted around
//! their vertex along hexagons of sides `a` and `1.5a` and split into pieces
//! of length at most `r`; each middle segment of length `a` is replaced by a
//! scaled zigzag path whose length is tuned so that all edges end up with
//! the same number of pieces.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use super::bend::{bend_endings, BendCheck, BendError, BendPlan};
use crate::geometry::{
    angular_distance, build_gamma, gamma_params, validate_geometric, validate_planar_drawing, Drawing, GammaPath,
    Point, Segment, ValidationReport,
};
use crate::graph::{subdivide, subdivision_vertex};

/// Upper bound on r_k / a imposed by the hexagon clearances.
const R_CAP: f64 = 0.866_025_403_784_438_6 * 0.093;
/// Consecutive ending pieces are this fraction of r long.
const STEP_FRACTION: f64 = 1.0 - 1e-7;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input drawing is not a plane straight-line drawing ({0} violations)")]
    NotPlane(usize),
    #[error("input drawing has bent edges")]
    BentInput,
    #[error("vertex {vertex} has degree {degree} > 5")]
    DegreeTooLarge { vertex: usize, degree: usize },
    #[error("input has no edges")]
    NoEdges,
    #[error("vertex {0} coincides with another vertex or edge")]
    Degenerate(usize),
    #[error("bending at vertex {vertex}: {source}")]
    Bend { vertex: usize, source: BendError },
    #[error("no common length found for k in {first}..={last}: {reason}")]
    Infeasible { first: usize, last: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Smallest zigzag order to try; chosen automatically when `None`.
    pub k: Option<usize>,
    /// How many consecutive orders to try before giving up.
    pub attempts: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { k: None, attempts: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeParts {
    pub u: usize,
    pub v: usize,
    pub length: f64,
    /// Length of the initial part at `u`.
    pub initial: f64,
    /// Number of middle segments of length `a`.
    pub lambda: usize,
    /// Length of the terminal part at `v`.
    pub terminal: f64,
    /// Pieces used by the ending at `u` and at `v`.
    pub ending_u: usize,
    pub ending_v: usize,
    /// Total ending pieces (`ending_u + ending_v`).
    pub endings: usize,
    /// Pieces of the middle part.
    pub middle: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub a: f64,
    /// Smallest angle between two edges at a common vertex.
    pub alpha: f64,
    pub k: usize,
    pub r: f64,
    /// Common subdivision length.
    pub l: usize,
    /// Initial part length at each vertex, in units of `a`.
    pub vertex_offsets: Vec<f64>,
    pub edges: Vec<EdgeParts>,
    /// Bound on the ending pieces per edge (`10 + 60k`).
    pub ending_bound: usize,
    pub bend_checks: Vec<BendCheck>,
    pub geometric: ValidationReport,
    pub planar: ValidationReport,
}

/// Smallest `k` meeting the inequalities used to pick the zigzag order.
pub fn minimal_order(lambda_min: usize, lambda_max: usize, alpha: f64) -> usize {
    let (l1, lm) = (lambda_min as f64, lambda_max as f64);
    let cap = R_CAP.min(2.0 * (alpha / 2.0).sin());
    (1..)
        .find(|&k| {
            let kf = k as f64;
            l1 * kf * kf >= 10.0 + 60.0 * kf
                && l1 * (3.0 * kf * kf + 6.0 * kf + 1.0) >= lm * (5.0 * kf + 1.0)
                && gamma_params::<f64>(k).map_or(false, |p| p.r <= cap)
        })
        .unwrap()
}

/// Splits the polyline `pts` (at least two points) into pieces: points at
/// distance exactly `rho` are taken along the polyline until one lands on
/// the last segment, and the rest of that segment is divided evenly.
pub fn step_along(pts: &[Point], rho: f64) -> Vec<Point> {
    let last = pts.len() - 2;
    let mut out = vec![pts[0]];
    let (mut seg, mut c) = (0, pts[0]);
    while seg < last {
        let mut next = None;
        for j in seg..=last {
            let (a, b) = (if j == seg { c } else { pts[j] }, pts[j + 1]);
            let d = b - a;
            let f = a - c;
            // |f + t d| = rho, larger root
            let (qa, qb, qc) = (d.dot(d), 2.0 * f.dot(d), f.dot(f) - rho * rho);
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                continue;
            }
            let t = (-qb + disc.sqrt()) / (2.0 * qa);
            if (0.0..=1.0).contains(&t) {
                next = Some((j, a + d * t));
                break;
            }
        }
        match next {
            Some((j, p)) => {
                out.push(p);
                seg = j;
                c = p;
            }
            None => break,
        }
    }
    let end = pts[pts.len() - 1];
    let pieces = ((c.dist(end) / rho).ceil() as usize).max(1);
    for i in 1..pieces {
        out.push(c.lerp(end, i as f64 / pieces as f64));
    }
    out.push(end);
    out
}

struct Prepared {
    a: f64,
    alpha: f64,
    offsets: Vec<f64>,
    plans: Vec<BendPlan>,
    /// Position of each edge in the incidence list of its endpoints.
    slot: HashMap<(usize, usize), usize>,
    edges: Vec<(usize, usize)>,
    lambdas: Vec<usize>,
}

fn prepare(d: &Drawing) -> Result<Prepared, PipelineError> {
    let g = &d.graph;
    if d.bent_edges().next().is_some() {
        return Err(PipelineError::BentInput);
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Err(PipelineError::NoEdges);
    }
    for v in 0..g.n() {
        if g.degree(v) > 5 {
            return Err(PipelineError::DegreeTooLarge { vertex: v, degree: g.degree(v) });
        }
    }
    let planar = validate_planar_drawing(d, None);
    if !planar.passed {
        return Err(PipelineError::NotPlane(planar.violations.len()));
    }

    let dir = |v: usize, w: usize| (d.coords[w] - d.coords[v]).angle();
    let mut alpha = PI;
    let mut offsets = vec![0.0; g.n()];
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let mut av = 2.0 * PI;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                av = av.min(angular_distance(dir(v, nb[i]), dir(v, nb[j])));
            }
        }
        alpha = alpha.min(av);
        // Middle squares start at t a from the vertex; the squares of two
        // edges meeting at angle av must stay apart.
        let mut t: f64 = 2.0;
        while t < 200.0 {
            let gap = av - 2.0 * (0.5 / t).atan();
            if gap > 0.0 && t * gap.min(PI / 2.0).sin() > 4.0 * R_CAP {
                break;
            }
            t += 1.0;
        }
        offsets[v] = t;
    }

    // Scale a.
    let mut sep = f64::INFINITY;
    for (i, &(u, v)) in edges.iter().enumerate() {
        let s = Segment::new(d.coords[u], d.coords[v]);
        for &(x, y) in &edges[i + 1..] {
            if x == u || x == v || y == u || y == v {
                continue;
            }
            sep = sep.min(s.dist_to_segment(&Segment::new(d.coords[x], d.coords[y])));
        }
    }
    let max_off = offsets.iter().cloned().fold(2.0, f64::max);
    let mut a = sep / 3.0;
    for v in 0..g.n() {
        for w in v + 1..g.n() {
            let dist = d.coords[v].dist(d.coords[w]);
            if dist == 0.0 {
                return Err(PipelineError::Degenerate(v));
            }
            a = a.min(dist / (2.0 * max_off + 2.0));
        }
    }
    for &(u, v) in &edges {
        a = a.min(d.coords[u].dist(d.coords[v]) / (offsets[u] + offsets[v] + 1.0));
    }
    if a == 0.0 {
        return Err(PipelineError::Degenerate(0));
    }
    let a = 0.99 * a;

    let mut plans = Vec::with_capacity(g.n());
    let mut slot = HashMap::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let dirs: Vec<f64> = nb.iter().map(|&w| dir(v, w)).collect();
        let plan = bend_endings(v, d.coords[v], &dirs, 1.5 * a, a)
            .map_err(|source| PipelineError::Bend { vertex: v, source })?;
        for (i, &w) in nb.iter().enumerate() {
            slot.insert((v, w), i);
        }
        plans.push(plan);
    }
    let lambdas = edges
        .iter()
        .map(|&(u, v)| {
            let l = d.coords[u].dist(d.coords[v]);
            ((l - (offsets[u] + offsets[v]) * a) / a).floor() as usize
        })
        .collect();
    Ok(Prepared { a, alpha, offsets, plans, slot, edges, lambdas })
}

struct Attempt {
    drawing: Drawing,
    config: PipelineConfig,
}

fn attempt(d: &Drawing, p: &Prepared, k: usize) -> Result<Attempt, String> {
    let params = gamma_params::<f64>(k).map_err(|e| e.to_string())?;
    let a = p.a;
    let r = params.r * a;
    let rho = r * STEP_FRACTION;

    let ending = |v: usize, w: usize, m: Point| {
        let plan = &p.plans[v];
        let mut pts = plan.edge_path(p.slot[&(v, w)]);
        pts.push(m);
        step_along(&pts, rho)
    };

    // Endings and junction points.
    let mut parts = Vec::with_capacity(p.edges.len());
    let mut chains_u = Vec::with_capacity(p.edges.len());
    let mut chains_v = Vec::with_capacity(p.edges.len());
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let (pu, pv) = (d.coords[u], d.coords[v]);
        let length = pu.dist(pv);
        let dir = (pv - pu) * (1.0 / length);
        let lambda = p.lambdas[e];
        let initial = p.offsets[u] * a;
        let mu = pu + dir * initial;
        let mv = pu + dir * (initial + lambda as f64 * a);
        let cu = ending(u, v, mu);
        let cv = ending(v, u, mv);
        parts.push(EdgeParts {
            u,
            v,
            length,
            initial,
            lambda,
            terminal: length - initial - lambda as f64 * a,
            ending_u: cu.len() - 1,
            ending_v: cv.len() - 1,
            endings: cu.len() + cv.len() - 2,
            middle: 0,
        });
        chains_u.push(cu);
        chains_v.push(cv);
    }

    let (lo, hi) = (params.min_length(), params.full_length());
    let need = parts.iter().map(|q| q.endings + q.lambda * lo).max().unwrap();
    let cap = parts.iter().map(|q| q.endings + q.lambda * hi).min().unwrap();
    if need > cap {
        return Err(format!("k = {k}: shortest admissible length {need} exceeds longest {cap}"));
    }
    let bound = 10 + 60 * k;
    if let Some(q) = parts.iter().find(|q| q.endings > bound) {
        return Err(format!("k = {k}: edge {}-{} uses {} ending pieces > {bound}", q.u, q.v, q.endings));
    }
    let l = need;

    let base = build_gamma(k, Point::new(0.0, 0.0), Point::new(1.0, 0.0)).map_err(|e| e.to_string())?;
    let mut shapes: HashMap<usize, GammaPath<f64>> = HashMap::new();
    let g = subdivide(&d.graph, l).map_err(|e| e.to_string())?;
    let n = d.graph.n();
    let mut coords = vec![Point::new(0.0, 0.0); g.n()];
    coords[..n].copy_from_slice(&d.coords);

    for (e, q) in parts.iter_mut().enumerate() {
        let (pu, pv) = (d.coords[q.u], d.coords[q.v]);
        let dir = (pv - pu) * (1.0 / q.length);
        let total = l - q.endings;
        q.middle = total;
        let (each, extra) = (total / q.lambda, total % q.lambda);
        let mut chain = chains_u[e].clone();
        for j in 0..q.lambda {
            let target = each + usize::from(j < extra);
            let shape = match shapes.get(&target) {
                Some(s) => s,
                None => {
                    let s = base.adjust_length(target).map_err(|e| e.to_string())?;
                    shapes.entry(target).or_insert(s)
                }
            };
            let start = pu + dir * (q.initial + j as f64 * a);
            let end = pu + dir * (q.initial + (j + 1) as f64 * a);
            let local = shape.local_vertices();
            for (i, lp) in local.iter().enumerate().skip(1) {
                let pt = if i + 1 == local.len() {
                    end
                } else {
                    start + Point::new(dir.x * lp.x - dir.y * lp.y, dir.x * lp.y + dir.y * lp.x) * a
                };
                chain.push(pt);
            }
        }
        let tail = &chains_v[e];
        chain.extend(tail.iter().rev().skip(1));
        if chain.len() != l + 1 {
            return Err(format!("edge {}-{} realized with {} pieces instead of {l}", q.u, q.v, chain.len() - 1));
        }
        for (i, &pt) in chain.iter().enumerate().take(l).skip(1) {
            coords[subdivision_vertex(n, l, e, i)] = pt;
        }
    }

    let drawing = Drawing::new(g, coords, r)
        .map_err(|e| e.to_string())?
        .with_provenance(format!("uniform subdivision of length {l}, zigzag order {k}"));
    let geometric = validate_geometric(&drawing);
    let planar = validate_planar_drawing(&drawing, None);
    if !geometric.passed || !planar.passed {
        return Err(format!(
            "k = {k}: {} geometric and {} planarity violations",
            geometric.violations.len(),
            planar.violations.len()
        ));
    }
    let config = PipelineConfig {
        a,
        alpha: p.alpha,
        k,
        r,
        l,
        vertex_offsets: p.offsets.clone(),
        edges: parts,
        ending_bound: bound,
        bend_checks: p.plans.iter().map(BendPlan::check).collect(),
        geometric,
        planar,
    };
    Ok(Attempt { drawing, config })
}

/// Runs the whole construction; the output graph is `subdivide(g, L)` for
/// the reported common length `L`.
pub fn theorem_a_pipeline(d: &Drawing, opts: &PipelineOptions) -> Result<(Drawing, PipelineConfig), PipelineError> {
    let p = prepare(d)?;
    let lmin = *p.lambdas.iter().min().unwrap();
    let lmax = *p.lambdas.iter().max().unwrap();
    let first = opts.k.unwrap_or_else(|| minimal_order(lmin, lmax, p.alpha));
    let last = first + opts.attempts.max(1) - 1;
    let mut reason = String::new();
    for k in first..=last {
        match attempt(d, &p, k) {
            Ok(at) => return Ok((at.drawing, at.config)),
            Err(why) => {
                log::info!("pipeline attempt failed: {why}");
                reason = why;
            }
        }
    }
    Err(PipelineError::Infeasible { first, last, reason })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stepping_straight_and_bent() {
        let pts = step_along(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)], 0.3);
        assert_eq!(pts.len(), 5);
        assert!((pts[1].x - 0.25).abs() < 1e-15);
        let pts = step_along(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 2.0)], 0.3);
        assert!(pts[1].dist(pts[0]) - 0.3 < 1e-12);
        assert_eq!(*pts.last().unwrap(), Point::new(1.0, 2.0));
        for w in pts.windows(2) {
            assert!(w[0].dist(w[1]) <= 0.3 + 1e-12);
        }
    }

    #[test]
    fn order_inequalities() {
        let k = minimal_order(10, 10, 1.0);
        assert!(10 * k * k >= 10 + 60 * k);
        assert!(10 * (k - 1) * (k - 1) < 10 + 60 * (k - 1));
    }
}
