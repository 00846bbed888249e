//! Small planar geometry toolkit: vectors, convex hulls, polygon queries.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub const fn v2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Vec2 {
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }
    /// Scalar cross product self.x*o.y - self.y*o.x.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }
    /// Counterclockwise rotation by 90 degrees.
    pub fn rot90(self) -> Vec2 {
        v2(-self.y, self.x)
    }
    pub fn unit(self) -> Vec2 {
        let n = self.norm();
        v2(self.x / n, self.y / n)
    }
    pub fn to_slice(self) -> [f64; 2] {
        [self.x, self.y]
    }
    pub fn from_slice(p: &[f64]) -> Vec2 {
        v2(p[0], p.get(1).copied().unwrap_or(0.0))
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        v2(self.x + o.x, self.y + o.y)
    }
}
impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        v2(self.x - o.x, self.y - o.y)
    }
}
impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        v2(self.x * s, self.y * s)
    }
}
impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        v2(-self.x, -self.y)
    }
}

/// Orientation of the triple (a, b, c): positive for a counterclockwise turn.
pub fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Convex hull in counterclockwise order (monotone chain).
/// Collinear interior points are dropped; on ties the earlier point is kept.
pub fn convex_hull(mut pts: Vec<Vec2>) -> Vec<Vec2> {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Signed area of a polygon given in counterclockwise order.
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    let mut a = 0.0;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        a += p.cross(q);
    }
    0.5 * a
}

/// Whether p lies in the closed convex polygon (counterclockwise vertices).
pub fn point_in_convex_polygon(p: Vec2, poly: &[Vec2], tol: f64) -> bool {
    if poly.is_empty() {
        return false;
    }
    if poly.len() == 1 {
        return (p - poly[0]).norm() <= tol;
    }
    if poly.len() == 2 {
        return dist_point_segment(p, poly[0], poly[1]) <= tol;
    }
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if orient(a, b, p) < -tol * (b - a).norm().max(1.0) {
            return false;
        }
    }
    true
}

pub fn dist_point_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let l2 = ab.norm2();
    if l2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    (p - (a + ab * s)).norm()
}

/// Distance from p to the closed convex polygon (0 if inside).
pub fn dist_point_convex_polygon(p: Vec2, poly: &[Vec2]) -> f64 {
    if poly.is_empty() {
        return f64::INFINITY;
    }
    if poly.len() == 1 {
        return (p - poly[0]).norm();
    }
    if poly.len() == 2 {
        return dist_point_segment(p, poly[0], poly[1]);
    }
    if point_in_convex_polygon(p, poly, 0.0) {
        return 0.0;
    }
    (0..poly.len())
        .map(|i| dist_point_segment(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two convex polygons, estimated by sampling
/// vertices and edge subdivisions of each against the other.
pub fn hausdorff_convex(a: &[Vec2], b: &[Vec2]) -> f64 {
    fn one_sided(from: &[Vec2], to: &[Vec2]) -> f64 {
        let mut d = 0.0f64;
        let n = from.len();
        for i in 0..n {
            let p = from[i];
            let q = from[(i + 1) % n.max(1)];
            for k in 0..8 {
                let s = k as f64 / 8.0;
                let z = p + (q - p) * s;
                d = d.max(dist_point_convex_polygon(z, to));
            }
        }
        d
    }
    one_sided(a, b).max(one_sided(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_points() {
        let pts = vec![
            v2(0.0, 0.0),
            v2(1.0, 0.0),
            v2(1.0, 1.0),
            v2(0.0, 1.0),
            v2(0.5, 0.5),
            v2(0.5, 0.0),
        ];
        let h = convex_hull(pts);
        assert_eq!(h.len(), 4);
        assert!((polygon_area(&h) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_polygon_queries() {
        let tri = vec![v2(0.0, 0.0), v2(2.0, 0.0), v2(0.0, 2.0)];
        assert!(point_in_convex_polygon(v2(0.5, 0.5), &tri, 0.0));
        assert!(!point_in_convex_polygon(v2(1.5, 1.5), &tri, 0.0));
        // nearest point on the hypotenuse x + y = 2
        let d = dist_point_convex_polygon(v2(2.0, 2.0), &tri);
        assert!((d - 2.0f64.sqrt()).abs() < 1e-12);
    }
}
