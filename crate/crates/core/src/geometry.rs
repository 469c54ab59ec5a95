//! Straight-line drawings on integer points, used as ground truth.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::system::{Edge, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("need at least 3 points, got {0}")]
    TooFew(usize),
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
}

/// Sign of the cross product `(b - a) x (c - a)`: positive for a left turn.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

/// Whether the closed segments `ab` and `cd` share a point, for four points
/// in general position (so only proper crossings are possible).
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let s1 = orient(a, b, c).signum() * orient(a, b, d).signum();
    let s2 = orient(c, d, a).signum() * orient(c, d, b).signum();
    s1 < 0 && s2 < 0
}

/// Whether `p` lies strictly inside triangle `abc`.
pub fn in_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    let o = orient(a, b, c).signum();
    orient(a, b, p).signum() == o && orient(b, c, p).signum() == o && orient(c, a, p).signum() == o
}

pub fn check_general_position(points: &[Point]) -> Result<(), GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::TooFew(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(GeometryError::Duplicate(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(points[i], points[j], points[k]) == 0 {
                    return Err(GeometryError::Collinear(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Compares directions `p - o` and `q - o` by counterclockwise angle from the
/// positive x axis.
fn angle_cmp(o: Point, p: Point, q: Point) -> Ordering {
    let half = |r: Point| {
        let (dx, dy) = (r.x - o.x, r.y - o.y);
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    };
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&orient(o, p, q)))
}

/// The rotation system of the straight-line drawing on `points`
/// (vertex `i` sits at `points[i]`).
pub fn rotation_from_points(points: &[Point]) -> Result<RotationSystem, GeometryError> {
    check_general_position(points)?;
    Ok(rotation_from_points_unchecked(points))
}

/// Like [`rotation_from_points`] but skips the cubic general-position check.
pub fn rotation_from_points_unchecked(points: &[Point]) -> RotationSystem {
    let n = points.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut row: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            row.sort_by(|&p, &q| angle_cmp(points[v], points[p], points[q]));
            row
        })
        .collect();
    RotationSystem::from_rows(&rows).expect("angular sort yields permutations")
}

/// All crossing pairs of the straight-line drawing, each pair ordered.
pub fn segment_crossings(points: &[Point]) -> Vec<(Edge, Edge)> {
    let n = points.len();
    let edges: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v))).collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.is_independent(f) && segments_cross(points[e.u()], points[e.v()], points[f.u()], points[f.v()]) {
                out.push((e, f));
            }
        }
    }
    out
}

/// `n` points in convex position, listed counterclockwise.
///
/// The points lie on the parabola `y = x^2`, so no three are collinear.
pub fn convex_position(n: usize) -> Vec<Point> {
    (0..n as i64).map(|i| Point::new(i, i * i)).collect()
}

/// `n` random integer points in general position inside `[0, range)^2`.
pub fn random_general_position<R: Rng>(n: usize, range: i64, rng: &mut R) -> Vec<Point> {
    assert!(range as i128 * range as i128 > 4 * n as i128 * n as i128, "coordinate range too small");
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..range), rng.gen_range(0..range));
        let ok = pts.iter().enumerate().all(|(i, &a)| {
            a != p && pts[i + 1..].iter().all(|&b| orient(a, b, p) != 0)
        });
        if ok {
            pts.push(p);
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_point_drawing_has_expected_rotation() {
        let pts = [Point::new(0, 0), Point::new(4, 0), Point::new(2, 4), Point::new(2, 1)];
        let rs = rotation_from_points(&pts).unwrap();
        assert_eq!(rs.to_labels(), vec![vec![2, 4, 3], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]]);
        assert!(segment_crossings(&pts).is_empty());
    }

    #[test]
    fn square_has_one_crossing() {
        let pts = [Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)];
        assert_eq!(segment_crossings(&pts), vec![(Edge::labeled(1, 3), Edge::labeled(2, 4))]);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let col = [Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)];
        assert_eq!(rotation_from_points(&col), Err(GeometryError::Collinear(0, 1, 2)));
        let dup = [Point::new(0, 0), Point::new(0, 0), Point::new(2, 3)];
        assert_eq!(rotation_from_points(&dup), Err(GeometryError::Duplicate(0, 1)));
        assert_eq!(rotation_from_points(&col[..2]), Err(GeometryError::TooFew(2)));
    }

    #[test]
    fn convex_pentagon_has_five_crossings() {
        assert_eq!(segment_crossings(&convex_position(5)).len(), 5);
        assert!(check_general_position(&convex_position(30)).is_ok());
    }

    #[test]
    fn random_points_are_in_general_position() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pts = random_general_position(40, 1000, &mut rng);
        assert!(check_general_position(&pts).is_ok());
    }
}
