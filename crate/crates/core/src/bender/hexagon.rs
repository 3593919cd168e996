use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{angular_distance, normalize_angle, Point};

const SIXTH: f64 = PI / 3.0;

/// Default angular clearance between incident edges and hexagon rays.
pub const RAY_CLEARANCE: f64 = PI / 37.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrientationError {
    /// Forbidden rotations cover the whole period of pi/3. The certificate
    /// is the total measure of the forbidden set (with overlaps counted).
    #[error("no safe orientation: forbidden measure {forbidden:.6} covers the period {period:.6}")]
    Covered { forbidden: f64, period: f64 },
    #[error("clearance must be non-negative and finite")]
    BadClearance,
}

/// Six rays from `apex` at angles `theta0 + j pi/3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RaySystem {
    pub apex: Point,
    pub theta0: f64,
    pub rays: [f64; 6],
}

impl RaySystem {
    pub fn new(apex: Point, theta0: f64) -> Self {
        let theta0 = normalize_angle(theta0);
        let mut rays = [0.0; 6];
        for (j, r) in rays.iter_mut().enumerate() {
            *r = normalize_angle(theta0 + j as f64 * SIXTH);
        }
        RaySystem { apex, theta0, rays }
    }

    /// Angular distance from `angle` to the nearest ray.
    pub fn ray_distance(&self, angle: f64) -> f64 {
        let x = normalize_angle(angle - self.theta0) % SIXTH;
        x.min(SIXTH - x)
    }

    /// Smallest angular distance between any direction and any ray.
    pub fn clearance(&self, directions: &[f64]) -> f64 {
        directions.iter().map(|&d| self.ray_distance(d)).fold(f64::INFINITY, f64::min)
    }

    /// Corner `j` of the hexagon with circumradius `side`.
    pub fn corner(&self, side: f64, j: i64) -> Point {
        self.apex + Point::polar(self.theta0 + j as f64 * SIXTH) * side
    }

    /// Point where the ray at `angle` leaves the hexagon with circumradius
    /// `side`.
    pub fn boundary_point(&self, side: f64, angle: f64) -> Point {
        let rel = normalize_angle(angle - self.theta0);
        let mid = (rel / SIXTH).floor() * SIXTH + SIXTH / 2.0;
        let apothem = side * 3f64.sqrt() / 2.0;
        self.apex + Point::polar(angle) * (apothem / (rel - mid).cos())
    }

    /// Corners met when walking the hexagon boundary from angle `from` to
    /// angle `to`, counterclockwise if `ccw`.
    pub fn corners_between(&self, side: f64, from: f64, to: f64, ccw: bool) -> Vec<Point> {
        let span = if ccw { normalize_angle(to - from) } else { normalize_angle(from - to) };
        let mut out = Vec::new();
        for j in 0..6i64 {
            let c = self.theta0 + j as f64 * SIXTH;
            let off = if ccw { normalize_angle(c - from) } else { normalize_angle(from - c) };
            if off > 0.0 && off < span {
                out.push((off, self.corner(side, j)));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out.into_iter().map(|(_, p)| p).collect()
    }
}

/// Picks the orientation of a hexagonal ray system around `apex` so that
/// every direction is more than `clearance` away from every ray.
///
/// Rotations are taken modulo pi/3; each direction forbids an open window of
/// width `2 clearance`. The result is the midpoint of the largest allowed gap.
pub fn find_safe_orientation(apex: Point, directions: &[f64], clearance: f64) -> Result<RaySystem, OrientationError> {
    if !(clearance >= 0.0 && clearance.is_finite()) {
        return Err(OrientationError::BadClearance);
    }
    if directions.is_empty() {
        return Ok(RaySystem::new(apex, SIXTH / 2.0));
    }
    let mut centers: Vec<f64> = directions.iter().map(|&d| normalize_angle(d) % SIXTH).collect();
    centers.sort_by(f64::total_cmp);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..centers.len() {
        let a = centers[i];
        let b = if i + 1 < centers.len() { centers[i + 1] } else { centers[0] + SIXTH };
        let gap = b - a - 2.0 * clearance;
        if gap > best.0 {
            best = (gap, (a + b) / 2.0);
        }
    }
    if best.0 <= 0.0 {
        return Err(OrientationError::Covered { forbidden: 2.0 * clearance * centers.len() as f64, period: SIXTH });
    }
    let rs = RaySystem::new(apex, best.1);
    debug_assert!(rs.clearance(directions) > clearance);
    Ok(rs)
}

/// Angular distance from `x` to the arc that starts at `from` and sweeps
/// `span` radians counterclockwise; zero inside the arc.
pub(crate) fn dist_to_arc(x: f64, from: f64, span: f64) -> f64 {
    if normalize_angle(x - from) <= span {
        0.0
    } else {
        angular_distance(x, from).min(angular_distance(x, from + span))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_direction() {
        let rs = find_safe_orientation(Point::new(0.0, 0.0), &[0.0], RAY_CLEARANCE).unwrap();
        assert!((rs.clearance(&[0.0]) - PI / 6.0).abs() < 1e-12);
        for w in rs.rays.windows(2) {
            assert!((normalize_angle(w[1] - w[0]) - SIXTH).abs() < 1e-12);
        }
    }

    #[test]
    fn covered_period_fails() {
        let dirs: Vec<f64> = (0..8).map(|i| i as f64 * SIXTH / 8.0).collect();
        let err = find_safe_orientation(Point::new(0.0, 0.0), &dirs, RAY_CLEARANCE).unwrap_err();
        assert!(matches!(err, OrientationError::Covered { .. }));
    }

    #[test]
    fn hexagon_boundary() {
        let rs = RaySystem::new(Point::new(1.0, 1.0), 0.0);
        let p = rs.boundary_point(2.0, 0.0);
        assert!(p.dist(Point::new(3.0, 1.0)) < 1e-12);
        let m = rs.boundary_point(2.0, PI / 6.0);
        assert!((m.dist(rs.apex) - 3f64.sqrt()).abs() < 1e-12);
        let cs = rs.corners_between(2.0, 0.1, 2.0, true);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].dist(rs.corner(2.0, 1)) < 1e-12);
        let cs = rs.corners_between(2.0, 0.1, 2.0, false);
        assert_eq!(cs.len(), 5);
    }

    #[test]
    fn arc_distance() {
        assert_eq!(dist_to_arc(0.5, 0.0, 1.0), 0.0);
        assert!((dist_to_arc(1.5, 0.0, 1.0) - 0.5).abs() < 1e-12);
        assert!((dist_to_arc(-0.25, 0.0, 1.0) - 0.25).abs() < 1e-12);
    }
}
