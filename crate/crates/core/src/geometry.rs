//! Minimal planar geometry: points, convex polygons and half-plane clipping.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn distance(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// `{ x : normal . x <= offset }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
}

impl HalfPlane {
    #[inline]
    pub fn signed_distance(&self, q: Point) -> f64 {
        self.normal.dot(q) - self.offset
    }
}

/// Clips a convex polygon against a half-plane (one Sutherland-Hodgman pass).
pub fn clip(poly: &[Point], hp: &HalfPlane) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let Some(&last) = poly.last() else {
        return out;
    };
    let mut prev = last;
    let mut d_prev = hp.signed_distance(prev);
    for &cur in poly {
        let d_cur = hp.signed_distance(cur);
        if d_cur <= 0.0 {
            if d_prev > 0.0 {
                out.push(prev + (cur - prev) * (d_prev / (d_prev - d_cur)));
            }
            out.push(cur);
        } else if d_prev <= 0.0 {
            out.push(prev + (cur - prev) * (d_prev / (d_prev - d_cur)));
        }
        prev = cur;
        d_prev = d_cur;
    }
    out
}

/// Convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

const AREA_EPS: f64 = 1e-14;

impl ConvexPolygon {
    /// Accepts either orientation; rejects fewer than three vertices, zero
    /// area and reflex corners.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateCell(format!(
                "{} vertices",
                vertices.len()
            )));
        }
        if vertices
            .iter()
            .any(|q| !q.x.is_finite() || !q.y.is_finite())
        {
            return Err(Error::DegenerateCell("non-finite vertex".into()));
        }
        let area = signed_area(&vertices);
        if area.abs() <= AREA_EPS {
            return Err(Error::DegenerateCell("zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let m = vertices.len();
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let c = vertices[(i + 2) % m];
            if (b - a).cross(c - b) < -1e-12 {
                return Err(Error::DegenerateCell("not convex".into()));
            }
        }
        Ok(Self { vertices })
    }

    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Outward half-planes, one per edge, with unit normals.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        let m = self.vertices.len();
        (0..m)
            .filter_map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % m];
                let e = b - a;
                let len = e.x.hypot(e.y);
                if len <= 0.0 {
                    return None;
                }
                let normal = Point::new(e.y / len, -e.x / len);
                Some(HalfPlane {
                    normal,
                    offset: normal.dot(a),
                })
            })
            .collect()
    }

    /// Whether `q` lies in the closed polygon up to `tol`.
    pub fn contains(&self, q: Point, tol: f64) -> bool {
        self.half_planes()
            .iter()
            .all(|hp| hp.signed_distance(q) <= tol)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for q in &self.vertices {
            lo = Point::new(lo.x.min(q.x), lo.y.min(q.y));
            hi = Point::new(hi.x.max(q.x), hi.y.max(q.y));
        }
        (lo, hi)
    }
}

pub fn signed_area(poly: &[Point]) -> f64 {
    let m = poly.len();
    0.5 * (0..m)
        .map(|i| poly[i].cross(poly[(i + 1) % m]))
        .sum::<f64>()
}
