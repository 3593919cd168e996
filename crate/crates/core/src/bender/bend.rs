//! Rerouting of edge endings around a vertex along two concentric hexagons.
//!
//! Each edge leaving the apex O at angle φ is replaced, inside one of the
//! hexagons, by a spoke from O at angle ψ to a point Q on that hexagon,
//! followed by the hexagon boundary from Q to the point P where the original
//! edge leaves it. Spoke angles and hexagon choices are found by a small
//! search over angular constraints, then the plan is re-checked
//! geometrically.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use super::hexagon::{dist_to_arc, find_safe_orientation, OrientationError, RaySystem, RAY_CLEARANCE};
use crate::geometry::{angle_at, angular_distance, normalize_angle, Point, Segment};

const DEG: f64 = PI / 180.0;
const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Extra separation required between spokes beyond pi/3.
const SPOKE_MARGIN: f64 = 2.0 * DEG;
/// Extra distance between a bent spoke and the hexagon corners beyond pi/37.
const CORNER_MARGIN: f64 = 1.0 * DEG;
/// Smallest angle between the spoke and the edge when an edge is bent.
const MIN_BEND: f64 = 8.0 * DEG;
/// Separation between radial pieces and arcs of different edges.
const MU: f64 = 9.0 * DEG;
/// Search stops once every constraint holds with this much slack.
const GOOD_ENOUGH: f64 = 2.0 * DEG;
/// Relative slack when comparing the clearance with its required value;
/// both can be the same distance computed along different routes.
pub const CLEARANCE_TOLERANCE: f64 = 1e-9;

/// The factor `1/2 - (sqrt 3 / 2) tan(31 pi / 222)`: a boundary point whose
/// direction is more than pi/37 from every corner ray is farther than this
/// times the side length from every corner.
pub fn s_coefficient() -> f64 {
    0.5 - SQRT3_2 * (31.0 * PI / 222.0).tan()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BendError {
    #[error("vertex has degree {0}; at most 5 edges can be rerouted")]
    TooManyEdges(usize),
    #[error("edges {0} and {1} leave the vertex in the same direction")]
    Degenerate(usize, usize),
    #[error("hexagon sides must satisfy l1 > l2 > 0")]
    BadSides,
    #[error(transparent)]
    Orientation(#[from] OrientationError),
    #[error("no rerouting found; best constraint slack {best:.4} rad")]
    NoPlan { best: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BendEdge {
    /// Angle of the original edge at the apex.
    pub direction: f64,
    /// Angle of the spoke.
    pub spoke_angle: f64,
    /// 1 for the outer hexagon, 2 for the inner one.
    pub hexagon: u8,
    pub q: Point,
    pub p: Point,
    /// Hexagon corners passed between Q and P.
    pub corners: Vec<Point>,
    pub ccw: bool,
}

impl BendEdge {
    pub fn is_straight(&self) -> bool {
        self.q == self.p
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BendPlan {
    pub vertex: usize,
    pub orientation: RaySystem,
    pub l1: f64,
    pub l2: f64,
    pub edges: Vec<BendEdge>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BendCheck {
    /// Smallest ratio of a rerouted segment length to `l` of its hexagon.
    pub min_segment_ratio: f64,
    /// Smallest angle between consecutive segments of a rerouted edge.
    pub min_turn_angle: f64,
    /// Smallest angle between two spokes.
    pub min_spoke_angle: f64,
    /// Smallest distance between the curves of two edges, not counting
    /// spoke against spoke.
    pub clearance: f64,
    pub required_clearance: f64,
    pub passed: bool,
}

impl BendPlan {
    pub fn apex(&self) -> Point {
        self.orientation.apex
    }

    fn side(&self, h: u8) -> f64 {
        if h == 1 {
            self.l1
        } else {
            self.l2
        }
    }

    /// Replacement curve of edge `i` from the apex to P.
    pub fn edge_path(&self, i: usize) -> Vec<Point> {
        let e = &self.edges[i];
        let mut pts = vec![self.apex()];
        if !e.is_straight() {
            pts.push(e.q);
            pts.extend_from_slice(&e.corners);
        }
        pts.push(e.p);
        pts
    }

    /// Re-checks segment lengths, turning angles, spoke angles and clearance.
    pub fn check(&self) -> BendCheck {
        let o = self.apex();
        let coef = s_coefficient();
        let mut min_segment_ratio = f64::INFINITY;
        let mut min_turn_angle = PI;
        for (i, e) in self.edges.iter().enumerate() {
            let path = self.edge_path(i);
            let l = self.side(e.hexagon);
            for w in path.windows(2) {
                min_segment_ratio = min_segment_ratio.min(w[0].dist(w[1]) / l);
            }
            for w in path.windows(3) {
                min_turn_angle = min_turn_angle.min(angle_at(w[1], w[0], w[2]));
            }
            if path.len() > 2 {
                let prev = path[path.len() - 2];
                let out = e.p + Point::polar(e.direction);
                min_turn_angle = min_turn_angle.min(angle_at(e.p, prev, out));
            }
        }
        let mut min_spoke_angle = PI;
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                min_spoke_angle =
                    min_spoke_angle.min(angular_distance(self.edges[i].spoke_angle, self.edges[j].spoke_angle));
            }
        }

        // Curves with a tag: 0 for the spoke, 1 for the rest of the curve,
        // 2 for the continuation of the original edge outside.
        let reach = 2.0 * self.l1;
        let pieces: Vec<Vec<(u8, Segment<f64>)>> = (0..self.edges.len())
            .map(|i| {
                let path = self.edge_path(i);
                let mut v: Vec<_> =
                    path.windows(2).enumerate().map(|(k, w)| (u8::from(k > 0), Segment::new(w[0], w[1]))).collect();
                let e = &self.edges[i];
                v.push((2, Segment::new(e.p, o + Point::polar(e.direction) * reach)));
                v
            })
            .collect();
        let mut clearance = f64::INFINITY;
        let mut delta = f64::INFINITY;
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                for (ti, si) in &pieces[i] {
                    for (tj, sj) in &pieces[j] {
                        if (*ti == 0 && *tj == 0) || (*ti == 2 && *tj == 2) {
                            continue;
                        }
                        clearance = clearance.min(si.dist_to_segment(sj));
                    }
                }
                // distance between the original edges realized outside the
                // inner hexagon
                let (ei, ej) = (&self.edges[i], &self.edges[j]);
                let far = |e: &BendEdge| o + Point::polar(e.direction) * reach;
                let outside =
                    |e: &BendEdge| Segment::new(self.orientation.boundary_point(self.l2, e.direction), far(e));
                let whole = |e: &BendEdge| Segment::new(o, far(e));
                delta = delta.min(outside(ei).dist_to_segment(&whole(ej))).min(whole(ei).dist_to_segment(&outside(ej)));
            }
        }
        let required_clearance = (SQRT3_2 * (self.l1 - self.l2)).min(self.l2).min(SQRT3_2 * coef * self.l1).min(delta);
        let passed = self.edges.is_empty()
            || (min_segment_ratio > coef
                && min_turn_angle > PI / 3.0 + 1e-9
                && (self.edges.len() < 2 || min_spoke_angle > PI / 3.0 + 1e-9)
                && clearance >= required_clearance * (1.0 - CLEARANCE_TOLERANCE));
        BendCheck { min_segment_ratio, min_turn_angle, min_spoke_angle, clearance, required_clearance, passed }
    }
}

/// Radial piece of an edge near the apex: an angle and a radius band.
#[derive(Clone, Copy)]
struct Radial {
    edge: usize,
    spoke: bool,
    angle: f64,
    lo: f64,
    hi: f64,
}

/// Smallest slack, with the summed shortfall below the target slack as a
/// tie-breaker so that the search can leave plateaus of the minimum.
#[derive(Clone, Copy, Debug)]
struct Score {
    min: f64,
    shortfall: f64,
}

impl Score {
    fn add(&mut self, slack: f64) {
        self.min = self.min.min(slack);
        self.shortfall += (slack - GOOD_ENOUGH).min(0.0);
    }

    fn beats(&self, o: &Score) -> bool {
        self.min > o.min + 1e-12 || (self.min > o.min - 1e-12 && self.shortfall > o.shortfall + 1e-12)
    }
}

struct Search<'a> {
    dirs: &'a [f64],
    rs: RaySystem,
    l1: f64,
    l2: f64,
    /// Separation used between pieces of different edges; never more than
    /// the edges' own angular gaps.
    mu: f64,
}

impl Search<'_> {
    /// Constraint slack for spokes `psi` under hexagon choice `mask`
    /// (bit set = outer hexagon).
    fn slack(&self, psi: &[f64], mask: u32) -> f64 {
        self.score(psi, mask).min
    }

    fn score(&self, psi: &[f64], mask: u32) -> Score {
        let d = psi.len();
        let mut s = Score { min: f64::INFINITY, shortfall: 0.0 };
        for i in 0..d {
            for j in i + 1..d {
                s.add(angular_distance(psi[i], psi[j]) - (PI / 3.0 + SPOKE_MARGIN));
            }
        }
        let radius = |e: usize| if mask >> e & 1 == 1 { self.l1 } else { self.l2 };
        let mut radials = Vec::with_capacity(2 * d);
        for e in 0..d {
            let bend = angular_distance(psi[e], self.dirs[e]);
            if bend > 0.0 {
                s.add(self.rs.ray_distance(psi[e]) - (RAY_CLEARANCE + CORNER_MARGIN));
                s.add(bend - MIN_BEND);
            }
            let r = radius(e);
            radials.push(Radial { edge: e, spoke: true, angle: psi[e], lo: 0.0, hi: r });
            radials.push(Radial { edge: e, spoke: false, angle: self.dirs[e], lo: SQRT3_2 * r, hi: f64::INFINITY });
        }
        for (x, a) in radials.iter().enumerate() {
            for b in &radials[x + 1..] {
                if a.edge == b.edge || a.spoke == b.spoke || a.lo >= b.hi || b.lo >= a.hi {
                    continue;
                }
                s.add(angular_distance(a.angle, b.angle) - self.mu);
            }
        }
        for e in 0..d {
            let span = angular_distance(psi[e], self.dirs[e]);
            if span == 0.0 {
                continue;
            }
            let ccw = normalize_angle(self.dirs[e] - psi[e]) <= PI;
            let start = if ccw { psi[e] } else { self.dirs[e] };
            let r = radius(e);
            for b in &radials {
                if b.edge != e && b.lo < r && SQRT3_2 * r < b.hi {
                    s.add(dist_to_arc(b.angle, start, span) - self.mu);
                }
            }
        }
        s
    }

    fn best_mask(&self, psi: &[f64]) -> (Score, u32) {
        let worst = Score { min: f64::NEG_INFINITY, shortfall: f64::NEG_INFINITY };
        (0..1u32 << psi.len()).fold((worst, 0), |best, m| {
            let s = self.score(psi, m);
            if s.beats(&best.0) {
                (s, m)
            } else {
                best
            }
        })
    }

    fn ascend(&self, mut psi: Vec<f64>) -> (f64, Vec<f64>, u32) {
        let (mut cur, mut mask) = self.best_mask(&psi);
        for step in [16.0, 8.0, 4.0, 2.0, 1.0, 0.5, 0.25] {
            if cur.min >= GOOD_ENOUGH {
                break;
            }
            loop {
                let mut improved = false;
                for e in 0..psi.len() {
                    for cand in [psi[e] + step * DEG, psi[e] - step * DEG, self.dirs[e]] {
                        let old = psi[e];
                        psi[e] = normalize_angle(cand);
                        let (s, m) = self.best_mask(&psi);
                        if s.beats(&cur) {
                            cur = s;
                            mask = m;
                            improved = true;
                        } else {
                            psi[e] = old;
                        }
                    }
                }
                if !improved || cur.min >= GOOD_ENOUGH {
                    break;
                }
            }
        }
        (cur.min, psi, mask)
    }

    fn seeds(&self) -> Vec<Vec<f64>> {
        let d = self.dirs.len();
        let mut out = vec![self.dirs.to_vec()];
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| self.dirs[a].total_cmp(&self.dirs[b]));
        for p in 0..d {
            let anchor = self.dirs[order[p]];
            let mut psi = vec![0.0; d];
            for m in 0..d {
                psi[order[(p + m) % d]] = normalize_angle(anchor + m as f64 * 2.0 * PI / d as f64);
            }
            out.push(psi);
        }
        out
    }

    fn plan(&self, vertex: usize, psi: &[f64], mask: u32) -> BendPlan {
        let edges = psi
            .iter()
            .zip(self.dirs)
            .enumerate()
            .map(|(e, (&psi, &phi))| {
                let hexagon = if mask >> e & 1 == 1 { 1 } else { 2 };
                let side = if hexagon == 1 { self.l1 } else { self.l2 };
                let straight = angular_distance(psi, phi) == 0.0;
                let psi = if straight { phi } else { psi };
                let ccw = normalize_angle(phi - psi) <= PI;
                let p = self.rs.boundary_point(side, phi);
                BendEdge {
                    direction: phi,
                    spoke_angle: psi,
                    hexagon,
                    q: if straight { p } else { self.rs.boundary_point(side, psi) },
                    p,
                    corners: if straight { Vec::new() } else { self.rs.corners_between(side, psi, phi, ccw) },
                    ccw,
                }
            })
            .collect();
        BendPlan { vertex, orientation: self.rs, l1: self.l1, l2: self.l2, edges }
    }
}

/// Reroutes the endings of the edges leaving `apex` at angles `directions`
/// (at most five) using hexagons of sides `l1 > l2`.
pub fn bend_endings(vertex: usize, apex: Point, directions: &[f64], l1: f64, l2: f64) -> Result<BendPlan, BendError> {
    if directions.len() > 5 {
        return Err(BendError::TooManyEdges(directions.len()));
    }
    if !(l1 > l2 && l2 > 0.0 && l1.is_finite()) {
        return Err(BendError::BadSides);
    }
    let dirs: Vec<f64> = directions.iter().map(|&a| normalize_angle(a)).collect();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            if angular_distance(dirs[i], dirs[j]) < 1e-9 {
                return Err(BendError::Degenerate(i, j));
            }
        }
    }
    let rs = find_safe_orientation(apex, &dirs, RAY_CLEARANCE)?;
    let mut gap = f64::INFINITY;
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            gap = gap.min(angular_distance(dirs[i], dirs[j]));
        }
    }
    let search = Search { dirs: &dirs, rs, l1, l2, mu: MU.min(0.9 * gap) };
    let mut best = f64::NEG_INFINITY;
    let mut fallback = None;
    for seed in search.seeds() {
        let (score, psi, _) = search.ascend(seed);
        best = best.max(score);
        if score <= 0.0 {
            continue;
        }
        // The angular slack is a proxy; try every positive hexagon choice
        // against the geometric check, best slack first.
        let mut masks: Vec<(f64, u32)> =
            (0..1u32 << psi.len()).map(|m| (search.slack(&psi, m), m)).filter(|&(s, _)| s > 0.0).collect();
        masks.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for (slack, mask) in masks {
            let plan = search.plan(vertex, &psi, mask);
            if plan.check().passed {
                if slack >= GOOD_ENOUGH {
                    return Ok(plan);
                }
                if fallback.as_ref().map_or(true, |(s, _)| slack > *s) {
                    fallback = Some((slack, plan));
                }
                break;
            }
        }
    }
    fallback.map(|(_, p)| p).ok_or(BendError::NoPlan { best })
}
