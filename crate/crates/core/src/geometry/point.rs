use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar usable by the plane geometry (`f32` or `f64`).
pub trait Scalar: Float + FloatConst + FromPrimitive + Debug + Default + Send + Sync + 'static {
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal fits the scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at angle `theta`.
    #[inline]
    pub fn polar(theta: T) -> Self {
        Point2::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn normalized(self) -> Self {
        self * self.norm().recip()
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotate(self, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    pub fn to_f64(self) -> Point2<f64> {
        Point2::new(self.x.to_f64().unwrap(), self.y.to_f64().unwrap())
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point2::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Segment<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: Point2<T>, b: Point2<T>) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> T {
        self.a.dist(self.b)
    }

    /// Distance from `p` to the closest point of the segment.
    pub fn dist_to_point(&self, p: Point2<T>) -> T {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == T::zero() {
            return p.dist(self.a);
        }
        let t = ((p - self.a).dot(d) / len2).max(T::zero()).min(T::one());
        p.dist(self.a + d * t)
    }

    /// Distance between two segments (zero when they intersect).
    pub fn dist_to_segment(&self, o: &Segment<T>) -> T {
        let d1 = self.b - self.a;
        let d2 = o.b - o.a;
        let straddles = |s: &Segment<T>, p: Point2<T>, q: Point2<T>| {
            let dd = s.b - s.a;
            let c1 = dd.cross(p - s.a);
            let c2 = dd.cross(q - s.a);
            (c1 > T::zero() && c2 < T::zero()) || (c1 < T::zero() && c2 > T::zero())
        };
        if d1.cross(d2) != T::zero() && straddles(self, o.a, o.b) && straddles(o, self.a, self.b) {
            return T::zero();
        }
        self.dist_to_point(o.a).min(self.dist_to_point(o.b)).min(o.dist_to_point(self.a)).min(o.dist_to_point(self.b))
    }
}

/// Open polygonal curve with at least two points and no repeated
/// consecutive points.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline<T> {
    points: Vec<Point2<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(points: Vec<Point2<T>>) -> Option<Self> {
        if points.len() < 2 || points.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Polyline { points })
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        self.points.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn length(&self) -> T {
        self.segments().fold(T::zero(), |acc, s| acc + s.length())
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Polyline { points }
    }
}

/// Smallest absolute difference between two angles, in `[0, pi]`.
pub fn angular_distance<T: Scalar>(a: T, b: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut d = (a - b) % two_pi;
    if d < T::zero() {
        d = d + two_pi;
    }
    d.min(two_pi - d)
}

/// Angle in `[0, 2 pi)`.
pub fn normalize_angle<T: Scalar>(a: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut d = a % two_pi;
    if d < T::zero() {
        d = d + two_pi;
    }
    if d >= two_pi {
        d = d - two_pi;
    }
    d
}

/// Interior angle at `apex` between the rays towards `p` and `q`, in `[0, pi]`.
pub fn angle_at<T: Scalar>(apex: Point2<T>, p: Point2<T>, q: Point2<T>) -> T {
    let u = p - apex;
    let v = q - apex;
    u.cross(v).abs().atan2(u.dot(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_in_both_precisions() {
        let p = Point2::<f32>::new(3.0, 4.0);
        assert_eq!(p.norm(), 5.0);
        let q = Point2::<f64>::new(1.0, 0.0).rotate(std::f64::consts::FRAC_PI_2);
        assert!((q.x).abs() < 1e-15 && (q.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn segment_distances() {
        let s = Segment::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0));
        assert_eq!(s.dist_to_point(Point2::new(1.0, 1.0)), 1.0);
        assert_eq!(s.dist_to_point(Point2::new(3.0, 0.0)), 1.0);
        let t = Segment::new(Point2::new(1.0, -1.0), Point2::new(1.0, 1.0));
        assert_eq!(s.dist_to_segment(&t), 0.0);
        let u = Segment::new(Point2::new(0.0, 2.0), Point2::new(2.0, 3.0));
        assert_eq!(s.dist_to_segment(&u), 2.0);
    }

    #[test]
    fn angles() {
        use std::f64::consts::PI;
        assert!((angular_distance(0.1, 2.0 * PI - 0.1) - 0.2).abs() < 1e-12);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-12);
        let a = angle_at(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 2.0));
        assert!((a - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn polyline_rejects_degenerate() {
        assert!(Polyline::<f64>::new(vec![Point2::new(0.0, 0.0)]).is_none());
        let p = Point2::new(1.0, 1.0);
        assert!(Polyline::new(vec![p, p]).is_none());
        let pl = Polyline::new(vec![Point2::new(0.0, 0.0), Point2::new(3.0, 4.0), p]).unwrap();
        assert!((pl.length() - (5.0 + 13f64.sqrt())).abs() < 1e-12);
    }
}
