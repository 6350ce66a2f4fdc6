//! Triangle primitives in continuous pixel space.
//!
//! Coordinates follow image convention: `x` grows to the right (columns),
//! `y` grows downward (rows), origin at the top-left corner of the image.
//! A pixel `(i, j)` covers the unit square `[i, i+1) x [j, j+1)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Triangles whose absolute signed area falls below this are rejected.
pub const DEGENERATE_AREA: f64 = 1e-9;

/// Default tolerance for boundary-inclusive membership.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate triangle (signed area {area})")]
    DegenerateTriangle { area: f64 },
    #[error("vertex ({x}, {y}) lies outside the {width}x{height} image")]
    OutOfBounds { x: f64, y: f64, width: u32, height: u32 },
    #[error("non-finite coordinate")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Maps an integer click onto the center of the clicked pixel.
    pub fn from_click(x: i64, y: i64) -> Self {
        Point2::new(x as f64 + 0.5, y as f64 + 0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    fn sub(self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }

    fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// Half of the 2-D cross product `(b - a) x (c - a)`.
///
/// Positive for counter-clockwise winding in a y-up frame (clockwise on
/// screen), negative for the opposite winding, zero iff collinear.
pub fn signed_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * b.sub(a).cross(c.sub(a))
}

/// Three vertices with non-zero area.
///
/// Vertex order is kept as given; either winding is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    p1: Point2,
    p2: Point2,
    p3: Point2,
}

impl Triangle {
    /// Builds a triangle, rejecting non-finite or collinear vertices.
    pub fn new(p1: Point2, p2: Point2, p3: Point2) -> Result<Self, GeometryError> {
        if !(p1.is_finite() && p2.is_finite() && p3.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let area = signed_area(p1, p2, p3);
        if area.abs() < DEGENERATE_AREA {
            return Err(GeometryError::DegenerateTriangle { area });
        }
        Ok(Triangle { p1, p2, p3 })
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(self.p1, self.p2, self.p3)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> f64 {
        self.p1.distance(self.p2) + self.p2.distance(self.p3) + self.p3.distance(self.p1)
    }

    pub fn centroid(&self) -> Point2 {
        Point2::new(
            (self.p1.x + self.p2.x + self.p3.x) / 3.0,
            (self.p1.y + self.p2.y + self.p3.y) / 3.0,
        )
    }

    /// Axis-aligned bounds as `(min, max)`.
    pub fn bounds(&self) -> (Point2, Point2) {
        let [a, b, c] = self.vertices();
        (
            Point2::new(a.x.min(b.x).min(c.x), a.y.min(b.y).min(c.y)),
            Point2::new(a.x.max(b.x).max(c.x), a.y.max(b.y).max(c.y)),
        )
    }

    /// Scales the triangle about its centroid.
    pub fn scaled(&self, factor: f64) -> Result<Triangle, GeometryError> {
        let c = self.centroid();
        let s = |p: Point2| Point2::new(c.x + factor * (p.x - c.x), c.y + factor * (p.y - c.y));
        Triangle::new(s(self.p1), s(self.p2), s(self.p3))
    }

    /// Barycentric weights of `p` with respect to `(p1, p2, p3)`.
    ///
    /// Each weight is the ratio of the sub-triangle opposite its vertex to
    /// the whole, so the result does not depend on winding.
    pub fn barycentric(&self, p: Point2) -> BarycentricCoords {
        let total = self.signed_area();
        let alpha = signed_area(p, self.p2, self.p3) / total;
        let beta = signed_area(self.p1, p, self.p3) / total;
        BarycentricCoords {
            alpha,
            beta,
            gamma: 1.0 - alpha - beta,
        }
    }

    /// Boundary-inclusive membership: every weight is at least `-eps`.
    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        let w = self.barycentric(p);
        w.alpha >= -eps && w.beta >= -eps && w.gamma >= -eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarycentricCoords {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl BarycentricCoords {
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }

    pub fn min(&self) -> f64 {
        self.alpha.min(self.beta).min(self.gamma)
    }

    /// Reconstructs the point these weights describe on `tri`.
    pub fn apply(&self, tri: &Triangle) -> Point2 {
        let [a, b, c] = tri.vertices();
        Point2::new(
            self.alpha * a.x + self.beta * b.x + self.gamma * c.x,
            self.alpha * a.y + self.beta * b.y + self.gamma * c.y,
        )
    }
}

/// Checks that three clicked vertices form a usable triangle inside a
/// `width x height` image.
///
/// Bounds are checked before area so that an out-of-image click is reported
/// as such even when the triple also happens to be collinear.
pub fn validate_triangle(
    p1: Point2,
    p2: Point2,
    p3: Point2,
    width: u32,
    height: u32,
) -> Result<Triangle, GeometryError> {
    for p in [p1, p2, p3] {
        if !p.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if p.x < 0.0 || p.y < 0.0 || p.x >= f64::from(width) || p.y >= f64::from(height) {
            return Err(GeometryError::OutOfBounds {
                x: p.x,
                y: p.y,
                width,
                height,
            });
        }
    }
    Triangle::new(p1, p2, p3)
}
