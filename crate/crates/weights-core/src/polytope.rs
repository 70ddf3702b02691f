use serde::{Deserialize, Serialize};

use crate::CoreError;

pub type Point = [i64; 2];

pub fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Vertices of the convex hull, counterclockwise, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// A lattice polytope of dimension one or two. One dimensional polytopes
/// keep their two endpoints in the plane; intervals on the line sit on `y = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    dim: u8,
    vertices: Vec<Point>,
}

impl LatticePolytope {
    /// The hull of `points`, of whatever dimension it has.
    pub fn from_points(points: &[Point]) -> Result<Self, CoreError> {
        let hull = convex_hull(points);
        match hull.len() {
            0 | 1 => Err(CoreError::Degenerate("fewer than two distinct points")),
            2 => Ok(LatticePolytope { dim: 1, vertices: hull }),
            _ => {
                // Monotone chain returns two points for collinear input.
                Ok(LatticePolytope { dim: 2, vertices: hull })
            }
        }
    }

    /// A two dimensional polygon; collinear input is rejected.
    pub fn polygon(points: &[Point]) -> Result<Self, CoreError> {
        let p = Self::from_points(points)?;
        if p.dim != 2 {
            return Err(CoreError::Degenerate("collinear points span no polygon"));
        }
        Ok(p)
    }

    /// The interval `[lo, hi]` on the line.
    pub fn interval(lo: i64, hi: i64) -> Result<Self, CoreError> {
        if lo >= hi {
            return Err(CoreError::Degenerate("empty or single point interval"));
        }
        Ok(LatticePolytope { dim: 1, vertices: vec![[lo, 0], [hi, 0]] })
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Twice the euclidean area (dimension two) or zero.
    pub fn area2(&self) -> i64 {
        if self.dim != 2 {
            return 0;
        }
        let v = &self.vertices;
        (0..v.len())
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                p[0] * q[1] - p[1] * q[0]
            })
            .sum()
    }

    /// `d! * vol`: twice the area for polygons, lattice length for segments.
    pub fn normalized_volume(&self) -> u64 {
        match self.dim {
            2 => self.area2() as u64,
            _ => {
                let (p, q) = (self.vertices[0], self.vertices[1]);
                gcd(q[0] - p[0], q[1] - p[1]) as u64
            }
        }
    }

    /// Directed edges `(v_i, v_{i+1})`; a segment has a single edge.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let v = &self.vertices;
        if self.dim == 1 {
            return vec![(v[0], v[1])];
        }
        (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect()
    }

    /// Closed membership.
    pub fn contains(&self, p: Point) -> bool {
        if self.dim == 1 {
            let (a, b) = (self.vertices[0], self.vertices[1]);
            return cross(a, b, p) == 0 && on_closed_segment(a, b, p);
        }
        self.edges().iter().all(|&(a, b)| cross(a, b, p) >= 0)
    }

    /// Membership in the relative interior.
    pub fn contains_interior(&self, p: Point) -> bool {
        if self.dim == 1 {
            let (a, b) = (self.vertices[0], self.vertices[1]);
            return self.contains(p) && p != a && p != b;
        }
        self.edges().iter().all(|&(a, b)| cross(a, b, p) > 0)
    }

    pub fn is_vertex(&self, p: Point) -> bool {
        self.vertices.contains(&p)
    }
}

fn on_closed_segment(a: Point, b: Point, p: Point) -> bool {
    (a[0].min(b[0])..=a[0].max(b[0])).contains(&p[0]) && (a[1].min(b[1])..=a[1].max(b[1])).contains(&p[1])
}
