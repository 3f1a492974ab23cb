//! Exact geometric ground truth on an integer realization of the convex
//! `n`-gon. Used to cross-check the combinatorial classifier and centroid
//! test; every predicate is evaluated in `i128`.

use std::cmp::Ordering;

use crate::config::ConfigType;
use crate::error::{Error, Result};
use crate::triple::{CentroidPosition, Triple};

/// Coordinates must stay within `±COORD_BOUND` so that products in the
/// predicates fit comfortably in `i128`.
pub const COORD_BOUND: i64 = 1 << 31;

pub const DEFAULT_RADIUS: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn check(&self) -> Result<()> {
        for c in [self.x, self.y] {
            if c.abs() > COORD_BOUND {
                return Err(Error::CoordinateOverflow(c));
            }
        }
        Ok(())
    }
}

/// Sign of `(q - p) × (r - p)`: `+1` counterclockwise, `-1` clockwise, `0`
/// collinear.
pub fn orientation(p: Point, q: Point, r: Point) -> Result<i8> {
    p.check()?;
    q.check()?;
    r.check()?;
    Ok(orient_raw(p, q, r))
}

fn orient_raw(p: Point, q: Point, r: Point) -> i8 {
    let dx1 = (q.x - p.x) as i128;
    let dy1 = (q.y - p.y) as i128;
    let dx2 = (r.x - p.x) as i128;
    let dy2 = (r.y - p.y) as i128;
    match (dx1 * dy2 - dy1 * dx2).cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Open segments `pq` and `rs` intersect in a single interior point.
fn properly_cross(p: Point, q: Point, r: Point, s: Point) -> bool {
    let o1 = orient_raw(p, q, r);
    let o2 = orient_raw(p, q, s);
    let o3 = orient_raw(r, s, p);
    let o4 = orient_raw(r, s, q);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// A strictly convex integer polygon whose vertex `j` is `points[j]`, listed
/// clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexRealization {
    n: usize,
    radius: i64,
    points: Vec<Point>,
}

impl ConvexRealization {
    /// Rounds the regular `n`-gon of radius `radius` to integer points,
    /// doubling the radius until the result validates as strictly convex.
    ///
    /// For even `n` the second half of the points is the exact negation of
    /// the first, so the centroid is the origin and diameters pass through it.
    pub fn realize(n: usize, radius: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::GroundSetTooSmall { n, min: 3 });
        }
        if radius <= 0 {
            return Err(Error::InvalidParameter(format!(
                "radius {radius} must be positive"
            )));
        }
        let mut r = radius;
        loop {
            if r > COORD_BOUND {
                return Err(Error::CoordinateOverflow(r));
            }
            let rz = ConvexRealization {
                n,
                radius: r,
                points: rounded_polygon(n, r),
            };
            if rz.is_strictly_convex() {
                return Ok(rz);
            }
            r *= 2;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    /// Every other vertex lies strictly right of each directed side
    /// `p[i] -> p[i+1]`.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.n;
        let p = &self.points;
        (0..n).all(|i| {
            (0..n)
                .filter(|&j| j != i && j != (i + 1) % n)
                .all(|j| orient_raw(p[i], p[(i + 1) % n], p[j]) == -1)
        })
    }

    fn check_triple(&self, t: &Triple) -> Result<()> {
        t.validate(self.n)
    }

    /// Classifies two distinct triangles from exact incidence and crossing
    /// predicates.
    pub fn classify(&self, s: &Triple, t: &Triple) -> Result<ConfigType> {
        self.check_triple(s)?;
        self.check_triple(t)?;
        if s == t {
            return Err(Error::IdenticalTriples(*s));
        }
        let shared: Vec<usize> = s
            .vertices()
            .into_iter()
            .filter(|&v| t.contains(v))
            .collect();
        match shared.len() {
            2 => {
                let (u, w) = (self.point(shared[0]), self.point(shared[1]));
                let third = |x: &Triple| {
                    x.vertices()
                        .into_iter()
                        .find(|v| !shared.contains(v))
                        .expect("triple has a third vertex")
                };
                let side_s = orient_raw(u, w, self.point(third(s)));
                let side_t = orient_raw(u, w, self.point(third(t)));
                if side_s == 0 || side_t == 0 {
                    return Err(Error::Inconsistent(
                        "collinear vertices in convex position".into(),
                    ));
                }
                Ok(if side_s != side_t {
                    ConfigType::D1
                } else {
                    ConfigType::D2
                })
            }
            1 => match self.crossings(s, t) {
                0 => Ok(ConfigType::S1),
                2 => Ok(ConfigType::S2),
                3 => Ok(ConfigType::S3),
                k => Err(Error::UnexpectedCrossings {
                    crossings: k,
                    family: "star",
                }),
            },
            _ => match self.crossings(s, t) {
                0 => Ok(ConfigType::M1),
                4 => Ok(ConfigType::M2),
                6 => Ok(ConfigType::M3),
                k => Err(Error::UnexpectedCrossings {
                    crossings: k,
                    family: "matching",
                }),
            },
        }
    }

    /// Number of properly crossing side pairs between two triangles.
    pub fn crossings(&self, s: &Triple, t: &Triple) -> usize {
        let sides = |x: &Triple| {
            let [a, b, c] = x.vertices();
            [(a, b), (a, c), (b, c)]
        };
        let mut count = 0;
        for (p, q) in sides(s) {
            for (r, u) in sides(t) {
                if properly_cross(self.point(p), self.point(q), self.point(r), self.point(u)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Exact position of the vertex average relative to triangle `t`.
    ///
    /// With `S` the coordinate sum, `orient(p, q, S/n)` has the sign of
    /// `(q - p) × (S - n p)`, so no division is performed.
    pub fn centroid_inside(&self, t: &Triple) -> Result<CentroidPosition> {
        self.check_triple(t)?;
        let n = self.n as i128;
        let sx: i128 = self.points.iter().map(|p| p.x as i128).sum();
        let sy: i128 = self.points.iter().map(|p| p.y as i128).sum();
        let [a, b, c] = t.vertices().map(|v| self.point(v));
        let side = |p: Point, q: Point| -> i8 {
            let dx1 = (q.x - p.x) as i128;
            let dy1 = (q.y - p.y) as i128;
            let dx2 = sx - n * p.x as i128;
            let dy2 = sy - n * p.y as i128;
            (dx1 * dy2 - dy1 * dx2).signum() as i8
        };
        let signs = [side(a, b), side(b, c), side(c, a)];
        let orient = orient_raw(a, b, c);
        if signs.iter().all(|&s| s == orient) {
            Ok(CentroidPosition::Interior)
        } else if signs.iter().any(|&s| s == -orient) {
            Ok(CentroidPosition::Exterior)
        } else {
            Ok(CentroidPosition::Boundary)
        }
    }
}

/// Free-function form of [`ConvexRealization::classify`].
pub fn oracle_classify(rz: &ConvexRealization, s: &Triple, t: &Triple) -> Result<ConfigType> {
    rz.classify(s, t)
}

fn rounded_polygon(n: usize, radius: i64) -> Vec<Point> {
    let phase = std::f64::consts::PI / n as f64;
    let at = |j: usize| {
        let theta = -2.0 * std::f64::consts::PI * j as f64 / n as f64 + phase;
        Point::new(
            (radius as f64 * theta.cos()).round() as i64,
            (radius as f64 * theta.sin()).round() as i64,
        )
    };
    if n % 2 == 0 {
        let half: Vec<Point> = (0..n / 2).map(at).collect();
        half.iter()
            .copied()
            .chain(half.iter().map(|p| Point::new(-p.x, -p.y)))
            .collect()
    } else {
        (0..n).map(at).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let o = Point::new(0, 0);
        assert_eq!(
            orientation(o, Point::new(1, 0), Point::new(0, 1)).unwrap(),
            1
        );
        assert_eq!(
            orientation(o, Point::new(1, 1), Point::new(2, 2)).unwrap(),
            0
        );
        assert!(orientation(o, Point::new(COORD_BOUND + 1, 0), o).is_err());
    }

    #[test]
    fn realizations_are_strictly_convex() {
        for n in [3, 4, 12, 31] {
            let rz = ConvexRealization::realize(n, DEFAULT_RADIUS).unwrap();
            assert_eq!(rz.points().len(), n);
            assert!(rz.is_strictly_convex());
        }
        // Tiny radius forces the doubling loop.
        let rz = ConvexRealization::realize(40, 2).unwrap();
        assert!(rz.radius() > 2);
        assert!(rz.is_strictly_convex());
    }

    #[test]
    fn crossing_examples() {
        let rz6 = ConvexRealization::realize(6, DEFAULT_RADIUS).unwrap();
        assert_eq!(rz6.crossings(&t(0, 1, 2), &t(3, 4, 5)), 0);
        assert_eq!(rz6.crossings(&t(0, 1, 3), &t(2, 4, 5)), 4);
        assert_eq!(rz6.crossings(&t(0, 2, 4), &t(1, 3, 5)), 6);
        assert_eq!(
            rz6.classify(&t(0, 1, 3), &t(2, 4, 5)).unwrap(),
            ConfigType::M2
        );
        let rz5 = ConvexRealization::realize(5, DEFAULT_RADIUS).unwrap();
        assert_eq!(rz5.crossings(&t(0, 1, 3), &t(0, 2, 4)), 3);
        assert_eq!(
            rz5.classify(&t(0, 2, 3), &t(0, 1, 4)).unwrap(),
            ConfigType::S2
        );
        assert_eq!(
            rz5.classify(&t(0, 1, 2), &t(2, 3, 4)).unwrap(),
            ConfigType::S1
        );
        let rz4 = ConvexRealization::realize(4, DEFAULT_RADIUS).unwrap();
        assert_eq!(
            rz4.classify(&t(0, 1, 2), &t(0, 2, 3)).unwrap(),
            ConfigType::D1
        );
    }

    #[test]
    fn centroid_examples() {
        use CentroidPosition::*;
        let rz6 = ConvexRealization::realize(6, DEFAULT_RADIUS).unwrap();
        assert_eq!(rz6.centroid_inside(&t(0, 2, 4)).unwrap(), Interior);
        for x in [1, 2, 4, 5] {
            assert_eq!(
                rz6.centroid_inside(&Triple::new(0, 3, x).unwrap()).unwrap(),
                Boundary
            );
        }
        let rz7 = ConvexRealization::realize(7, DEFAULT_RADIUS).unwrap();
        assert_eq!(rz7.centroid_inside(&t(0, 1, 2)).unwrap(), Exterior);
    }
}
