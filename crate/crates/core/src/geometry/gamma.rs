//! The zigzag path γ_k inside the square spanned by the diagonal AB.
//!
//! Local frame: A = (0,0), B = (1,0), the square S has the other corners
//! C = (1/2, 1/2) and D = (1/2, -1/2). Slants run between the sides AD and
//! BC; flats of length r_k run along those sides toward D and B.

use std::ops::Range;

use thiserror::Error;

use super::point::{Point2, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GammaError {
    #[error("zigzag order k must be at least 1")]
    ZeroOrder,
    #[error("endpoints coincide")]
    CoincidentEndpoints,
    #[error("target length {target} outside the valid interval [{min}, {max}]")]
    TargetOutOfRange { target: usize, min: usize, max: usize },
    #[error("parameter inequality violated for k = {k}: {what}")]
    Invariant { k: usize, what: &'static str },
    #[error("could not place shortcut vertices in dent {dent} for length {len}")]
    Placement { dent: usize, len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SegmentRole {
    SlantX,
    SlantY,
    Flat,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaParams<T> {
    pub k: usize,
    pub alpha: T,
    pub r: T,
    pub slant_len: T,
    pub x_dir: Point2<T>,
    pub y_dir: Point2<T>,
}

pub fn gamma_params<T: Scalar>(k: usize) -> Result<GammaParams<T>, GammaError> {
    if k == 0 {
        return Err(GammaError::ZeroOrder);
    }
    let kk = T::from_usize(k).unwrap();
    let one = T::one();
    let two = one + one;
    let m = two * kk + one;
    let alpha = (one / (two * m * m)).asin();
    let r = T::SQRT_2() / (two * two * kk) * (one - m * alpha.tan());
    let slant_len = T::SQRT_2() / (two * alpha.cos());
    let q = T::FRAC_PI_4();
    let p = GammaParams { k, alpha, r, slant_len, x_dir: Point2::polar(q - alpha), y_dir: -Point2::polar(q + alpha) };
    p.check()?;
    Ok(p)
}

impl<T: Scalar> GammaParams<T> {
    /// Re-checks the inequalities the construction depends on.
    pub fn check(&self) -> Result<(), GammaError> {
        let k = self.k;
        let kk = T::from_usize(k).unwrap();
        let one = T::one();
        let two = one + one;
        let four = two + two;
        let half_diag = T::FRAC_1_SQRT_2();
        let fail = |what| Err(GammaError::Invariant { k, what });
        if self.r <= T::SQRT_2() / (four * kk + one) {
            return fail("r_k > sqrt2/(4k+1)");
        }
        if !(two * self.r * kk < half_diag) {
            return fail("2 k r_k < sqrt2/2");
        }
        if !(half_diag < self.slant_len) {
            return fail("sqrt2/2 < slant length");
        }
        if !(self.slant_len < (two * kk + one) * self.r) {
            return fail("slant length < (2k+1) r_k");
        }
        if !(self.alpha.cos() > (four * kk + one) / (four * kk + two)) {
            return fail("cos(alpha_k) > (4k+1)/(4k+2)");
        }
        if !((two * kk + one) * self.alpha.tan() < one / (four * kk + one)) {
            return fail("(2k+1) tan(alpha_k) < 1/(4k+1)");
        }
        Ok(())
    }

    /// Number of edges of the fully subdivided path.
    pub fn full_length(&self) -> usize {
        4 * self.k * self.k + 6 * self.k + 1
    }

    pub fn min_length(&self) -> usize {
        5 * self.k + 1
    }

    fn dent_len(&self) -> usize {
        4 * self.k + 3
    }
}

#[derive(Clone, Debug)]
pub struct GammaPath<T> {
    pub params: GammaParams<T>,
    pub a: Point2<T>,
    pub b: Point2<T>,
    /// Corners of the polygonal curve, A first and B last.
    pub corners: Vec<Point2<T>>,
    /// Role of the segment between consecutive corners.
    pub roles: Vec<SegmentRole>,
    /// Path vertices from A to B.
    pub vertices: Vec<Point2<T>>,
    /// Vertex index ranges of the dents, in order from A.
    pub dents: Vec<Range<usize>>,
    /// Edge count of each dent.
    pub dent_lengths: Vec<usize>,
    full_local: Vec<Point2<T>>,
    local: Vec<Point2<T>>,
}

/// Converts (along AD, distance from AD) coordinates to the local frame.
fn from_side_frame<T: Scalar>(t: T, h: T) -> Point2<T> {
    let s = T::FRAC_1_SQRT_2();
    Point2::new((t + h) * s, (h - t) * s)
}

pub fn build_gamma<T: Scalar>(k: usize, a: Point2<T>, b: Point2<T>) -> Result<GammaPath<T>, GammaError> {
    if a == b {
        return Err(GammaError::CoincidentEndpoints);
    }
    let params = gamma_params::<T>(k)?;
    let h = T::FRAC_1_SQRT_2();
    let delta = h * params.alpha.tan();
    let r = params.r;

    let mut corners = vec![Point2::new(T::zero(), T::zero())];
    let mut roles = Vec::with_capacity(4 * k + 1);
    let mut t = T::zero();
    for _ in 0..k {
        t = t + delta;
        corners.push(from_side_frame(t, h));
        roles.push(SegmentRole::SlantX);
        t = t + r;
        corners.push(from_side_frame(t, h));
        roles.push(SegmentRole::Flat);
        t = t + delta;
        corners.push(from_side_frame(t, T::zero()));
        roles.push(SegmentRole::SlantY);
        t = t + r;
        corners.push(from_side_frame(t, T::zero()));
        roles.push(SegmentRole::Flat);
    }
    corners.push(Point2::new(T::one(), T::zero()));
    roles.push(SegmentRole::SlantX);

    let pieces = 2 * k + 1;
    let pieces_t = T::from_usize(pieces).unwrap();
    let mut full = vec![corners[0]];
    for (i, role) in roles.iter().enumerate() {
        let (p, q) = (corners[i], corners[i + 1]);
        match role {
            SegmentRole::Flat => full.push(q),
            _ => {
                for j in 1..pieces {
                    full.push(p.lerp(q, T::from_usize(j).unwrap() / pieces_t));
                }
                full.push(q);
            }
        }
    }
    debug_assert_eq!(full.len(), params.full_length() + 1);

    let mut gp = GammaPath {
        params,
        a,
        b,
        corners: Vec::new(),
        roles,
        vertices: Vec::new(),
        dents: Vec::new(),
        dent_lengths: vec![params.dent_len(); k],
        full_local: full.clone(),
        local: full,
    };
    gp.corners = corners.iter().map(|&p| gp.map(p)).collect();
    gp.refresh();
    Ok(gp)
}

/// Intersection of the lines through (p1, p2) and (q1, q2).
fn line_intersection<T: Scalar>(p1: Point2<T>, p2: Point2<T>, q1: Point2<T>, q2: Point2<T>) -> Point2<T> {
    let d1 = p2 - p1;
    let d2 = q2 - q1;
    let s = (q1 - p1).cross(d2) / d1.cross(d2);
    p1 + d1 * s
}

impl<T: Scalar> GammaPath<T> {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    /// Parameter of the mapped path: r_k scaled by |AB|.
    pub fn parameter(&self) -> T {
        self.params.r * self.a.dist(self.b)
    }

    /// Vertices in the normalized frame with A = (0,0) and B = (1,0).
    pub fn local_vertices(&self) -> &[Point2<T>] {
        &self.local
    }

    /// True if every vertex lies in the closed square on the diagonal AB,
    /// with slack `tol` relative to |AB|.
    pub fn in_square(&self, tol: T) -> bool {
        let s = T::FRAC_1_SQRT_2();
        self.local.iter().all(|p| {
            // side-frame coordinates
            let t = (p.x - p.y) * s;
            let h = (p.x + p.y) * s;
            t >= -tol && h >= -tol && t <= s + tol && h <= s + tol
        })
    }

    fn map(&self, p: Point2<T>) -> Point2<T> {
        let d = self.b - self.a;
        self.a + Point2::new(d.x * p.x - d.y * p.y, d.x * p.y + d.y * p.x)
    }

    fn refresh(&mut self) {
        let mut v: Vec<Point2<T>> = self.local.iter().map(|&p| self.map(p)).collect();
        v[0] = self.a;
        *v.last_mut().unwrap() = self.b;
        self.vertices = v;
        let mut dents = Vec::with_capacity(self.dent_lengths.len());
        let mut start = 0;
        for &s in &self.dent_lengths {
            dents.push(start..start + s + 1);
            start += s + 1;
        }
        self.dents = dents;
    }

    /// Returns a copy whose graph length is exactly `target`, obtained by
    /// shortening dents from the last one backward.
    pub fn adjust_length(&self, target: usize) -> Result<GammaPath<T>, GammaError> {
        let p = &self.params;
        let (min, max) = (p.min_length(), p.full_length());
        if target < min || target > max {
            return Err(GammaError::TargetOutOfRange { target, min, max });
        }
        let k = p.k;
        let full_dent = p.dent_len();
        let mut lengths = vec![full_dent; k];
        let mut excess = max - target;
        for s in lengths.iter_mut().rev() {
            let cut = excess.min(full_dent - 2);
            *s -= cut;
            excess -= cut;
        }
        debug_assert_eq!(excess, 0);

        let r = p.r;
        let mut local = Vec::with_capacity(target + 1);
        for (j, &s) in lengths.iter().enumerate() {
            let base = j * (full_dent + 1);
            let dent = &self.full_local[base..=base + full_dent];
            if s == full_dent {
                local.extend_from_slice(dent);
                continue;
            }
            let pt = |i: usize| dent[i];
            let qt = |i: usize| dent[full_dent - i];
            let t = (s - 2) / 2;
            local.extend((0..=t).map(pt));
            let w = line_intersection(pt(t), qt(t + 1), qt(t), pt(t + 1));
            if s % 2 == 0 {
                local.push(w);
            } else {
                let (p1, q1) = (pt(t + 1), qt(t + 1));
                let u = (r * T::lit(1.0 - 1e-6) / p1.dist(q1)).min(T::one());
                let pp = w.lerp(p1, u);
                let qq = w.lerp(q1, u);
                let pq = pp.dist(qq);
                let ok = pq <= r
                    && pq >= T::lit(0.9) * r
                    && pt(t).dist(qq) > r * T::lit(1.0 + 1e-6)
                    && qt(t).dist(pp) > r * T::lit(1.0 + 1e-6);
                if !ok {
                    return Err(GammaError::Placement { dent: j, len: s });
                }
                local.push(pp);
                local.push(qq);
            }
            local.extend((0..=t).rev().map(qt));
        }
        local.extend_from_slice(&self.full_local[k * (full_dent + 1)..]);
        debug_assert_eq!(local.len(), target + 1);

        let mut out = self.clone();
        out.local = local;
        out.dent_lengths = lengths;
        out.refresh();
        Ok(out)
    }
}

pub fn adjust_gamma_length<T: Scalar>(gp: &GammaPath<T>, target: usize) -> Result<GammaPath<T>, GammaError> {
    gp.adjust_length(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point2<f64>;

    #[test]
    fn params_k1_k2() {
        // 30-digit reference values
        let p = gamma_params::<f64>(1).unwrap();
        assert!((p.alpha - 0.0555841732809174760957256170039).abs() < 1e-15);
        assert!((p.r - 0.294536679940926233922744819811).abs() < 1e-15);
        assert!((p.slant_len - 0.708200527828170339332128334895).abs() < 1e-15);
        let p = gamma_params::<f64>(2).unwrap();
        assert!((p.alpha - 0.0200013335733904917506149862098).abs() < 1e-15);
        assert!((p.r - 0.159095489172053411293902641792).abs() < 1e-15);
        assert!(gamma_params::<f64>(0).is_err());
    }

    #[test]
    fn params_hold_in_single_precision() {
        for k in 1..=20 {
            gamma_params::<f32>(k).unwrap();
        }
    }

    #[test]
    fn path_shape() {
        let g = build_gamma(1, P::new(0.0, 0.0), P::new(1.0, 0.0)).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g.roles.len(), 5);
        assert_eq!(g.roles.iter().filter(|&&r| r == SegmentRole::Flat).count(), 2);
        let g = build_gamma(2, P::new(0.0, 0.0), P::new(1.0, 0.0)).unwrap();
        assert_eq!(g.len(), 29);
        assert_eq!(g.roles.len(), 9);
        assert_eq!(g.roles[0], SegmentRole::SlantX);
        assert_eq!(*g.roles.last().unwrap(), SegmentRole::SlantX);
        assert!(g.in_square(1e-12));
        // accumulated corners land on B
        let last = g.full_local[g.full_local.len() - 2];
        assert!(last.dist(P::new(1.0, 0.0)) < g.params.r);
    }

    #[test]
    fn corner_directions_match_params() {
        let g = build_gamma(3, P::new(0.0, 0.0), P::new(1.0, 0.0)).unwrap();
        for (i, role) in g.roles.iter().enumerate() {
            let d = (g.corners[i + 1] - g.corners[i]).normalized();
            let want = match role {
                SegmentRole::SlantX => g.params.x_dir,
                SegmentRole::SlantY => g.params.y_dir,
                SegmentRole::Flat => P::new(0.5f64.sqrt(), -(0.5f64.sqrt())),
            };
            assert!(d.dist(want) < 1e-9, "segment {i}");
        }
    }

    #[test]
    fn mapped_path_scales() {
        let a = P::new(2.0, 1.0);
        let b = P::new(2.0, 4.0);
        let g = build_gamma(2, a, b).unwrap();
        assert_eq!(g.vertices[0], a);
        assert_eq!(*g.vertices.last().unwrap(), b);
        assert!((g.parameter() - 3.0 * g.params.r).abs() < 1e-15);
    }

    #[test]
    fn adjust_lengths_and_errors() {
        let g = build_gamma(2, P::new(0.0, 0.0), P::new(1.0, 0.0)).unwrap();
        let same = g.adjust_length(29).unwrap();
        assert_eq!(same.vertices, g.vertices);
        let short = g.adjust_length(11).unwrap();
        assert_eq!(short.len(), 11);
        assert_eq!(short.dent_lengths, vec![2, 2]);
        let mid = g.adjust_length(20).unwrap();
        assert_eq!(mid.dent_lengths, vec![11, 2]);
        assert_eq!(g.adjust_length(10).unwrap_err(), GammaError::TargetOutOfRange { target: 10, min: 11, max: 29 });
        assert!(g.adjust_length(30).is_err());
        assert_eq!(build_gamma(1, P::new(1.0, 1.0), P::new(1.0, 1.0)).unwrap_err(), GammaError::CoincidentEndpoints);
    }
}
