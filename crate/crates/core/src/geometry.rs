//! Small planar geometry kit: points, signed angles and segment predicates.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

pub const fn pt(x: f64, y: f64) -> Point {
    Point { x, y }
}

impl Point {
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Point {
        self * (1.0 / self.norm())
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        pt(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn rotated(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        pt(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        pt(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        pt(-self.x, -self.y)
    }
}

/// Signed angle turning `a` into `b`, in (-pi, pi].
pub fn signed_angle(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Representative of `delta` modulo pi in (-pi/2, pi/2].
pub fn reduce_half_turn(delta: f64) -> f64 {
    let mut r = delta.rem_euclid(PI);
    if r > PI / 2.0 {
        r -= PI;
    }
    r
}

/// Line direction of a vector as an angle in [0, pi).
pub fn line_angle(v: Point) -> f64 {
    v.angle().rem_euclid(PI)
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

pub fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segment_intersection(a, b, c, d).is_some() {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentContact {
    /// Single common point at parameters `s` on the first and `t` on the second.
    Point { s: f64, t: f64, at: Point },
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// Intersection of segments `ab` and `cd`, if any.
pub fn segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Option<SegmentContact> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    let scale = r.norm().max(s.norm()).max(1e-300);
    if denom.abs() <= 1e-14 * scale * scale {
        // Parallel: only collinear overlaps or shared endpoints matter.
        if qp.cross(r).abs() > 1e-12 * scale * scale {
            return None;
        }
        let rr = r.dot(r);
        if rr == 0.0 {
            return None;
        }
        let t0 = qp.dot(r) / rr;
        let t1 = t0 + s.dot(r) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        if hi < lo {
            return None;
        }
        if (hi - lo) * rr.sqrt() > 1e-12 * scale {
            return Some(SegmentContact::Overlap);
        }
        let at = a + r * lo;
        let t = if s.dot(s) > 0.0 {
            ((at - c).dot(s) / s.dot(s)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        return Some(SegmentContact::Point { s: lo, t, at });
    }
    let u = qp.cross(s) / denom;
    let v = qp.cross(r) / denom;
    let eps = 1e-12;
    if u < -eps || u > 1.0 + eps || v < -eps || v > 1.0 + eps {
        return None;
    }
    let u = u.clamp(0.0, 1.0);
    let v = v.clamp(0.0, 1.0);
    Some(SegmentContact::Point {
        s: u,
        t: v,
        at: a + r * u,
    })
}

/// Sum of exterior turns of a closed polygon (vertices listed once) divided by 2 pi.
///
/// Each corner turn lies in (-pi, pi); a corner that folds straight back is
/// rejected.
pub fn turning_number(points: &[Point]) -> crate::Result<i64> {
    use crate::Error;
    let n = points.len();
    if n < 2 {
        return Err(Error::NotImmersion("closed polyline needs at least two points".into()));
    }
    let mut total = 0.0;
    for i in 0..n {
        let p0 = points[(i + n - 1) % n];
        let p1 = points[i];
        let p2 = points[(i + 1) % n];
        let din = p1 - p0;
        let dout = p2 - p1;
        if din.norm() == 0.0 || dout.norm() == 0.0 {
            return Err(Error::NotImmersion(format!("zero-length segment at point {i}")));
        }
        let turn = signed_angle(din, dout);
        if PI - turn.abs() < 1e-12 {
            return Err(Error::NotImmersion(format!("straight-back corner at point {i}")));
        }
        total += turn;
    }
    let k = (total / (2.0 * PI)).round();
    if (total - k * 2.0 * PI).abs() > 1e-9 * 2.0 * PI {
        return Err(Error::NonIntegerWinding { total });
    }
    Ok(k as i64)
}

/// Like [`turning_number`] but for a polyline whose last point repeats the first.
pub fn turning_number_closed(points: &[Point]) -> crate::Result<i64> {
    match points {
        [first, .., last] if first.dist(*last) <= 1e-12 * (1.0 + first.norm()) => {
            turning_number(&points[..points.len() - 1])
        }
        _ => Err(crate::Error::NotClosed),
    }
}
