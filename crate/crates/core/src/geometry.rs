//! Points, point sets and exact counting of squares and isosceles right triangles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Coord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("coordinate overflow in intermediate arithmetic")]
    Overflow,
    #[error("degenerate pair: both points coincide")]
    DegeneratePair,
    #[error("the four points do not form a square")]
    NotASquare,
    #[error("the pair is not contained in the square")]
    PairNotInSquare,
    #[error("empty point set")]
    Empty,
}

type GResult<T> = Result<T, GeometryError>;

#[inline]
fn add<T: Coord>(a: &T, b: &T) -> GResult<T> {
    a.checked_add(b).ok_or(GeometryError::Overflow)
}

#[inline]
fn sub<T: Coord>(a: &T, b: &T) -> GResult<T> {
    a.checked_sub(b).ok_or(GeometryError::Overflow)
}

#[inline]
fn mul<T: Coord>(a: &T, b: &T) -> GResult<T> {
    a.checked_mul(b).ok_or(GeometryError::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<T: Coord> Point<T> {
    pub fn to_big(&self) -> Point<BigInt> {
        Point::new(self.x.to_bigint(), self.y.to_bigint())
    }

    pub fn to_ratio(&self) -> Point<Ratio<T>> {
        Point::new(Ratio::from_integer(self.x.clone()), Ratio::from_integer(self.y.clone()))
    }

    /// Squared euclidean distance.
    pub fn dist2(&self, other: &Self) -> GResult<T> {
        let dx = sub(&other.x, &self.x)?;
        let dy = sub(&other.y, &self.y)?;
        add(&mul(&dx, &dx)?, &mul(&dy, &dy)?)
    }
}

/// A finite set of distinct points, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSet<T = i64> {
    points: Vec<Point<T>>,
}

impl<T: Ord> PointSet<T> {
    pub fn new(mut points: Vec<Point<T>>) -> Self {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Point<T>) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Inserts a point, returning false if it was already present.
    pub fn insert(&mut self, p: Point<T>) -> bool {
        match self.points.binary_search(&p) {
            Ok(_) => false,
            Err(pos) => {
                self.points.insert(pos, p);
                true
            }
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<T>> {
        self.points.iter()
    }
}

impl<T: Coord> PointSet<T> {
    pub fn to_big(&self) -> PointSet<BigInt> {
        PointSet { points: self.points.iter().map(Point::to_big).collect() }
    }

    /// Subset picked by indices into the sorted point list.
    pub fn subset(&self, indices: &[usize]) -> PointSet<T> {
        PointSet::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }
}

impl<T: Ord> FromIterator<Point<T>> for PointSet<T> {
    fn from_iter<I: IntoIterator<Item = Point<T>>>(iter: I) -> Self {
        PointSet::new(iter.into_iter().collect())
    }
}

impl<'a, T> IntoIterator for &'a PointSet<T> {
    type Item = &'a Point<T>;
    type IntoIter = std::slice::Iter<'a, Point<T>>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn half_if_even<T: Coord>(v: &T) -> Option<T> {
    let two = T::one() + T::one();
    let (q, r) = v.div_rem(&two);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// The two opposite corners of the square with diagonal `p`–`q`, if they are lattice points.
///
/// Returned in the order that makes `p, first, q, second` counterclockwise.
pub fn diagonal_completion<T: Coord>(p: &Point<T>, q: &Point<T>) -> GResult<Option<(Point<T>, Point<T>)>> {
    let sx = add(&p.x, &q.x)?;
    let sy = add(&p.y, &q.y)?;
    let dx = sub(&q.x, &p.x)?;
    let dy = sub(&q.y, &p.y)?;
    let (Some(ax), Some(ay), Some(bx), Some(by)) = (
        half_if_even(&add(&sx, &dy)?),
        half_if_even(&sub(&sy, &dx)?),
        half_if_even(&sub(&sx, &dy)?),
        half_if_even(&add(&sy, &dx)?),
    ) else {
        return Ok(None);
    };
    Ok(Some((Point::new(ax, ay), Point::new(bx, by))))
}

/// Number of squares with all four vertices in the set.
pub fn count_squares<T: Coord>(set: &PointSet<T>) -> GResult<u64> {
    let pts = set.points();
    let mut twice = 0u64;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if let Some((a, b)) = diagonal_completion(p, q)? {
                if set.contains(&a) && set.contains(&b) {
                    twice += 1;
                }
            }
        }
    }
    Ok(twice / 2)
}

/// All squares of the set as index quadruples, counterclockwise from the smallest index.
pub fn squares<T: Coord>(set: &PointSet<T>) -> GResult<Vec<[usize; 4]>> {
    let pts = set.points();
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            if let Some((a, b)) = diagonal_completion(p, q)? {
                if let (Some(ia), Some(ib)) = (set.index_of(&a), set.index_of(&b)) {
                    if ia > i && ib > i {
                        out.push([i, ia, j, ib]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Number of squares whose sides are parallel to the coordinate axes.
pub fn count_axis_parallel_squares<T: Coord>(set: &PointSet<T>) -> GResult<u64> {
    let pts = set.points();
    let mut twice = 0u64;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let dx = sub(&q.x, &p.x)?;
            let dy = sub(&q.y, &p.y)?;
            if dx.is_zero() || dx.abs() != dy.abs() {
                continue;
            }
            if set.contains(&Point::new(p.x.clone(), q.y.clone()))
                && set.contains(&Point::new(q.x.clone(), p.y.clone()))
            {
                twice += 1;
            }
        }
    }
    Ok(twice / 2)
}

fn is_rit_by_distances<T: Coord>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> GResult<bool> {
    let mut d = [a.dist2(b)?, a.dist2(c)?, b.dist2(c)?];
    d.sort();
    let two_small = add(&d[0], &d[0])?;
    Ok(!d[0].is_zero() && d[0] == d[1] && d[2] == two_small)
}

/// Whether three points form an isosceles right triangle.
pub fn is_rit<T: Coord>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> GResult<bool> {
    is_rit_by_distances(a, b, c)
}

/// Number of isosceles right triangles, by scanning all 3-subsets.
pub fn count_rit<T: Coord>(set: &PointSet<T>) -> GResult<u64> {
    let pts = set.points();
    let mut count = 0u64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if is_rit_by_distances(&pts[i], &pts[j], &pts[k])? {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

#[inline]
fn rotate_about<T: Coord>(apex: &Point<T>, b: &Point<T>) -> GResult<Point<T>> {
    let dx = sub(&b.x, &apex.x)?;
    let dy = sub(&b.y, &apex.y)?;
    Ok(Point::new(sub(&apex.x, &dy)?, add(&apex.y, &dx)?))
}

/// Number of isosceles right triangles, by rotating each leg about each apex.
pub fn count_rit_by_rotation<T: Coord>(set: &PointSet<T>) -> GResult<u64> {
    let pts = set.points();
    let mut count = 0u64;
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            if i != j && set.contains(&rotate_about(a, b)?) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// All isosceles right triangles as sorted index triples.
pub fn rits<T: Coord>(set: &PointSet<T>) -> GResult<Vec<[usize; 3]>> {
    let pts = set.points();
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(k) = set.index_of(&rotate_about(a, b)?) {
                let mut t = [i, j, k];
                t.sort_unstable();
                out.push(t);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `count_rit - 3 * count_squares`.
pub fn srit_minus_3sq<T: Coord>(set: &PointSet<T>) -> GResult<i64> {
    Ok(count_rit(set)? as i64 - 3 * count_squares(set)? as i64)
}

/// Number of squares containing each point, in point order.
pub fn square_degrees<T: Coord>(set: &PointSet<T>) -> GResult<Vec<usize>> {
    let mut deg = vec![0; set.len()];
    for sq in squares(set)? {
        for v in sq {
            deg[v] += 1;
        }
    }
    Ok(deg)
}

/// Squares of `set ∪ {x}` that contain `x`; `x` must not be in `set`.
pub fn count_squares_through<T: Coord>(set: &PointSet<T>, x: &Point<T>) -> GResult<u64> {
    let mut count = 0;
    for p in set {
        if let Some((a, b)) = diagonal_completion(x, p)? {
            if set.contains(&a) && set.contains(&b) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Isosceles right triangles of `set ∪ {x}` that contain `x`; `x` must not be in `set`.
pub fn count_rit_through<T: Coord>(set: &PointSet<T>, x: &Point<T>) -> GResult<u64> {
    let mut count = 0;
    for p in set {
        // x as apex, then x on the counterclockwise or clockwise leg of apex p
        if set.contains(&rotate_about(x, p)?) {
            count += 1;
        }
        if set.contains(&rotate_about(p, x)?) {
            count += 1;
        }
        let back = rotate_about(p, &rotate_about(p, &rotate_about(p, x)?)?)?;
        if set.contains(&back) {
            count += 1;
        }
    }
    Ok(count)
}

/// Squared-distance role of a pair inside a square, vertices in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairRole {
    E1,
    E2,
    E3,
    E4,
    D1,
    D2,
}

impl PairRole {
    pub fn is_edge(self) -> bool {
        !matches!(self, PairRole::D1 | PairRole::D2)
    }
}

/// Sorts four points and checks that they form a square.
pub fn ordered_square<T: Coord>(square: &[Point<T>; 4]) -> GResult<[Point<T>; 4]> {
    let mut v = square.clone();
    v.sort();
    let s = v[0].dist2(&v[1])?;
    let ok = !s.is_zero()
        && v[0].dist2(&v[2])? == s
        && v[1].dist2(&v[3])? == s
        && v[2].dist2(&v[3])? == s
        && v[0].dist2(&v[3])? == add(&s, &s)?
        && v[1].dist2(&v[2])? == add(&s, &s)?;
    if ok {
        Ok(v)
    } else {
        Err(GeometryError::NotASquare)
    }
}

/// Classifies the pair `{p, q}` as one of the four edges or two diagonals of a square.
pub fn classify_pair<T: Coord>(square: &[Point<T>; 4], p: &Point<T>, q: &Point<T>) -> GResult<PairRole> {
    let v = ordered_square(square)?;
    let i = v.iter().position(|x| x == p).ok_or(GeometryError::PairNotInSquare)?;
    let j = v.iter().position(|x| x == q).ok_or(GeometryError::PairNotInSquare)?;
    if i == j {
        return Err(GeometryError::DegeneratePair);
    }
    Ok(match (i.min(j), i.max(j)) {
        (0, 1) => PairRole::E1,
        (0, 2) => PairRole::E2,
        (1, 3) => PairRole::E3,
        (2, 3) => PairRole::E4,
        (0, 3) => PairRole::D1,
        _ => PairRole::D2,
    })
}

/// The three ways to complete a pair to a square, as exact rationals.
///
/// Order: the pair as diagonal, the pair as an edge with the square on its left,
/// the pair as an edge with the square on its right.
pub fn complete_square_from_pair<T: Coord>(
    p: &Point<T>,
    q: &Point<T>,
) -> GResult<[[Point<Ratio<T>>; 2]; 3]> {
    if p == q {
        return Err(GeometryError::DegeneratePair);
    }
    let two = T::one() + T::one();
    let half = |v: T| Ratio::new(v, two.clone());
    let int = |v: T| Ratio::from_integer(v);
    let (x1, y1, x2, y2) = (&p.x, &p.y, &q.x, &q.y);
    let sx = add(x1, x2)?;
    let sy = add(y1, y2)?;
    let ey = sub(y2, y1)?;
    let ex = sub(x1, x2)?;
    let diag = [
        Point::new(half(add(&sx, &ey)?), half(add(&sy, &ex)?)),
        Point::new(half(sub(&sx, &ey)?), half(sub(&sy, &ex)?)),
    ];
    let left = [
        Point::new(int(sub(x2, &ey)?), int(sub(y2, &ex)?)),
        Point::new(int(sub(x1, &ey)?), int(sub(y1, &ex)?)),
    ];
    let right = [
        Point::new(int(add(x2, &ey)?), int(add(y2, &ex)?)),
        Point::new(int(add(x1, &ey)?), int(add(y1, &ex)?)),
    ];
    Ok([diag, left, right])
}

/// The six third vertices completing `p1, p2` to an isosceles right triangle.
///
/// With `r` the counterclockwise quarter turn of `p2 - p1`: `p1 + r`, `p2 + r`,
/// `p1 - r`, `p2 - r`, then the two apexes over the midpoint, `m + r/2` and `m - r/2`.
pub fn rit_third_vertices<T: Coord>(p1: &Point<T>, p2: &Point<T>) -> GResult<[Point<Ratio<T>>; 6]> {
    if p1 == p2 {
        return Err(GeometryError::DegeneratePair);
    }
    let two = T::one() + T::one();
    let rx = sub(&p1.y, &p2.y)?;
    let ry = sub(&p2.x, &p1.x)?;
    let int = |v: T| Ratio::from_integer(v);
    let half = |v: T| Ratio::new(v, two.clone());
    let sx = add(&p1.x, &p2.x)?;
    let sy = add(&p1.y, &p2.y)?;
    Ok([
        Point::new(int(add(&p1.x, &rx)?), int(add(&p1.y, &ry)?)),
        Point::new(int(add(&p2.x, &rx)?), int(add(&p2.y, &ry)?)),
        Point::new(int(sub(&p1.x, &rx)?), int(sub(&p1.y, &ry)?)),
        Point::new(int(sub(&p2.x, &rx)?), int(sub(&p2.y, &ry)?)),
        Point::new(half(add(&sx, &rx)?), half(add(&sy, &ry)?)),
        Point::new(half(sub(&sx, &rx)?), half(sub(&sy, &ry)?)),
    ])
}

/// Translates the lexicographically smallest bounding corner to the origin and divides by the content.
pub fn normalize_content<T: Coord>(set: &PointSet<T>) -> PointSet<T> {
    let Some(first) = set.points().first() else {
        return set.clone();
    };
    let mut mx = first.x.clone();
    let mut my = first.y.clone();
    for p in set {
        if p.x < mx {
            mx = p.x.clone();
        }
        if p.y < my {
            my = p.y.clone();
        }
    }
    let mut g = T::zero();
    for p in set {
        g = g.gcd(&(p.x.clone() - mx.clone()));
        g = g.gcd(&(p.y.clone() - my.clone()));
    }
    if g.is_zero() {
        g = T::one();
    }
    PointSet::new(
        set.iter()
            .map(|p| Point::new((p.x.clone() - mx.clone()) / g.clone(), (p.y.clone() - my.clone()) / g.clone()))
            .collect(),
    )
}

/// Whether every coordinate of a rational point is an integer.
pub fn is_lattice<T: Coord>(p: &Point<Ratio<T>>) -> bool {
    p.x.denom().is_one() && p.y.denom().is_one()
}

impl PointSet<i64> {
    /// Square count, recomputed with arbitrary precision if i64 arithmetic overflows.
    pub fn square_count(&self) -> u64 {
        count_squares(self).unwrap_or_else(|_| count_squares(&self.to_big()).expect("bigint arithmetic cannot overflow"))
    }

    /// Triangle count, recomputed with arbitrary precision if i64 arithmetic overflows.
    pub fn rit_count(&self) -> u64 {
        count_rit_by_rotation(self)
            .unwrap_or_else(|_| count_rit_by_rotation(&self.to_big()).expect("bigint arithmetic cannot overflow"))
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Self {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }
}
