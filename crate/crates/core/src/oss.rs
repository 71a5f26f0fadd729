//! Oriented square sets and their realizability in the plane.
//!
//! An oriented square set of order `n` lists squares as label quadruples
//! `(a, b, c, d)`, counterclockwise. Each square contributes the complex
//! equations `z_a - z_b + z_c - z_d = 0` and `z_d - z_a = i (z_b - z_a)`,
//! split into real and imaginary rows over the variables
//! `x_1, y_1, ..., x_n, y_n`. The set is realizable when some solution has
//! pairwise distinct points.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{self, Point};
use crate::linalg::{self, AffineSpace};
use crate::{GridPoint, GridSet, RatPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OssError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("label {label} outside 1..={order}")]
    LabelOutOfRange { label: usize, order: usize },
    #[error("square {0:?} repeats a vertex")]
    RepeatedVertex([usize; 4]),
    #[error("no squares given")]
    NoSquares,
    #[error("the squares force two labels to coincide")]
    NotRealizable,
    #[error("input points do not form a set of distinct lattice points")]
    BadPoints,
}

/// Square quadruples over labels `1..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedSquareSet {
    order: usize,
    squares: Vec<[usize; 4]>,
}

impl OrientedSquareSet {
    pub fn new(order: usize, squares: Vec<[usize; 4]>) -> Result<Self, OssError> {
        for sq in &squares {
            for &label in sq {
                if label == 0 || label > order {
                    return Err(OssError::LabelOutOfRange { label, order });
                }
            }
            let mut s = *sq;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(OssError::RepeatedVertex(*sq));
            }
        }
        Ok(OrientedSquareSet { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    /// Parses `n=<order>` followed by one `a b c d` line per square; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, OssError> {
        let mut order = None;
        let mut squares = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| OssError::Parse { line: i + 1, msg: msg.to_string() };
            match order {
                None => {
                    let v = line.strip_prefix("n=").ok_or_else(|| err("expected n=<order>"))?;
                    order = Some(v.trim().parse::<usize>().map_err(|_| err("bad order"))?);
                }
                Some(_) => {
                    let nums: Vec<usize> = line
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect::<Result<_, _>>()
                        .map_err(|_| err("bad label"))?;
                    if nums.len() != 4 {
                        return Err(err("a square needs four labels"));
                    }
                    squares.push([nums[0], nums[1], nums[2], nums[3]]);
                }
            }
        }
        let order = order.ok_or(OssError::Parse { line: 1, msg: "missing n=<order>".into() })?;
        OrientedSquareSet::new(order, squares)
    }

    pub fn variables(&self) -> usize {
        2 * self.order
    }
}

impl fmt::Display for OrientedSquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.order)?;
        for [a, b, c, d] in &self.squares {
            writeln!(f, "{a} {b} {c} {d}")?;
        }
        Ok(())
    }
}

fn rotate_to_min(q: [usize; 4]) -> [usize; 4] {
    let k = (0..4).min_by_key(|&i| q[i]).unwrap_or(0);
    [q[k], q[(k + 1) % 4], q[(k + 2) % 4], q[(k + 3) % 4]]
}

/// Squares of a labeled point list; label `i + 1` is `points[i]`.
pub fn oss_from_labeled(points: &[GridPoint]) -> Result<OrientedSquareSet, OssError> {
    let set = GridSet::new(points.to_vec());
    if set.len() != points.len() {
        return Err(OssError::BadPoints);
    }
    let label_of: Vec<usize> =
        set.iter().map(|p| points.iter().position(|q| q == p).map(|i| i + 1).unwrap_or(0)).collect();
    let sq = geometry::squares(&set).map_err(|_| OssError::BadPoints)?;
    let mut out: Vec<[usize; 4]> = sq.iter().map(|s| rotate_to_min(s.map(|i| label_of[i]))).collect();
    out.sort_unstable();
    OrientedSquareSet::new(points.len(), out)
}

/// Squares of a point set, labels in lexicographic point order.
pub fn oss_from_pointset(set: &GridSet) -> OrientedSquareSet {
    oss_from_labeled(set.points()).expect("a point set is a valid labeling")
}

/// Sparse rows of the square equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub vars: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl LinearSystem {
    pub fn dense_rows(&self) -> impl Iterator<Item = Vec<BigRational>> + '_ {
        self.rows.iter().map(|r| dense(self.vars, r))
    }
}

fn dense(vars: usize, row: &[(usize, i64)]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); vars];
    for &(i, c) in row {
        v[i] += BigRational::from_integer(BigInt::from(c));
    }
    v
}

fn xv(label: usize) -> usize {
    2 * (label - 1)
}

fn yv(label: usize) -> usize {
    2 * (label - 1) + 1
}

/// The four real rows of one square: parallelogram real and imaginary, then rotation real and imaginary.
fn square_rows([a, b, c, d]: [usize; 4]) -> [Vec<(usize, i64)>; 4] {
    [
        vec![(xv(a), 1), (xv(b), -1), (xv(c), 1), (xv(d), -1)],
        vec![(yv(a), 1), (yv(b), -1), (yv(c), 1), (yv(d), -1)],
        vec![(xv(d), 1), (xv(a), -1), (yv(b), 1), (yv(a), -1)],
        vec![(yv(d), 1), (yv(a), -1), (xv(b), -1), (xv(a), 1)],
    ]
}

pub fn build_system(oss: &OrientedSquareSet) -> LinearSystem {
    let rows = oss.squares.iter().flat_map(|&s| square_rows(s)).collect();
    LinearSystem { vars: oss.variables(), rows }
}

type Form = Vec<(usize, BigRational)>;

fn form(terms: &[(usize, i64)]) -> Form {
    terms.iter().map(|&(i, c)| (i, BigRational::from_integer(BigInt::from(c)))).collect()
}

fn difference_forms(j: usize, k: usize) -> [Form; 2] {
    [form(&[(xv(j), 1), (xv(k), -1)]), form(&[(yv(j), 1), (yv(k), -1)])]
}

/// The gauge `z_{v1} = 0`, `z_{v2} = i` with `(v1, v2)` the first two vertices of the first square.
pub fn gauge(oss: &OrientedSquareSet) -> Option<(usize, usize)> {
    oss.squares.first().map(|s| (s[0], s[1]))
}

/// Solution space with the gauge applied; `None` if the gauge is inconsistent.
pub fn solve_gauged(oss: &OrientedSquareSet) -> Result<Option<AffineSpace<BigRational>>, OssError> {
    let (v1, v2) = gauge(oss).ok_or(OssError::NoSquares)?;
    let sys = build_system(oss);
    let n = sys.vars;
    let unit = |i: usize| {
        let mut r = vec![BigRational::zero(); n];
        r[i] = BigRational::one();
        r
    };
    let mut rows: Vec<(Vec<BigRational>, BigRational)> =
        sys.dense_rows().map(|r| (r, BigRational::zero())).collect();
    rows.push((unit(xv(v1)), BigRational::zero()));
    rows.push((unit(yv(v1)), BigRational::zero()));
    rows.push((unit(xv(v2)), BigRational::zero()));
    rows.push((unit(yv(v2)), BigRational::one()));
    Ok(linalg::solve(n, rows))
}

/// Homogeneous solution space without any gauge.
pub fn free_space(oss: &OrientedSquareSet) -> AffineSpace<BigRational> {
    let sys = build_system(oss);
    linalg::kernel(sys.vars, sys.dense_rows())
}

/// Outcome of the realizability analysis.
#[derive(Clone, Debug, Serialize)]
pub struct RealizabilityReport {
    pub realizable: bool,
    /// Dimension of the gauged solution space; `None` when the gauge is inconsistent.
    pub dimension: Option<usize>,
    /// Dimension of the full homogeneous solution space.
    pub free_dimension: usize,
    /// A pair of labels equal in every solution.
    pub certificate: Option<(usize, usize)>,
    /// Classes of labels forced to coincide, singletons omitted.
    pub merged: Vec<Vec<usize>>,
    #[serde(skip)]
    pub witness: Option<Vec<RatPoint>>,
    /// Witness scaled to the lattice, in label order.
    pub grid: Option<Vec<Point<BigInt>>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Decides realizability and builds a witness when one exists.
pub fn is_realizable(oss: &OrientedSquareSet) -> Result<RealizabilityReport, OssError> {
    let n = oss.order;
    let free = free_space(oss);
    let mut parent: Vec<usize> = (0..=n).collect();
    let mut certificate = None;
    for j in 1..=n {
        for k in j + 1..=n {
            let [fx, fy] = difference_forms(j, k);
            if free.vanishes(&fx) && free.vanishes(&fy) {
                certificate.get_or_insert((j, k));
                let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for j in 1..=n {
        let r = find(&mut parent, j);
        classes[r].push(j);
    }
    let merged: Vec<Vec<usize>> = classes.into_iter().filter(|c| c.len() > 1).collect();
    let gauged = if oss.squares.is_empty() { None } else { solve_gauged(oss)? };
    let dimension = gauged.as_ref().map(AffineSpace::dimension);
    let realizable = certificate.is_none();
    let (witness, grid) = match (&gauged, realizable) {
        (Some(space), true) => {
            let w = witness_in(space, n, &[])?;
            let g = grid_of(&w);
            (Some(w), Some(g))
        }
        _ => (None, None),
    };
    Ok(RealizabilityReport {
        realizable,
        dimension,
        free_dimension: free.dimension(),
        certificate,
        merged,
        witness,
        grid,
    })
}

/// Picks parameters on the moment curve `(t, t^2, ..., t^d)`, `t = 1, 2, ...`,
/// at which none of the restricted forms vanishes.
///
/// A form that is not identically zero becomes a nonzero polynomial in `t` of
/// degree at most `d`, so only finitely many `t` are rejected.
pub fn rationalize(
    space: &AffineSpace<BigRational>,
    avoid: &[Form],
) -> Result<Vec<BigRational>, OssError> {
    let restricted: Vec<(BigRational, Vec<BigRational>)> = avoid.iter().map(|f| space.restrict(f)).collect();
    if restricted.iter().any(|(c, v)| c.is_zero() && v.iter().all(Zero::is_zero)) {
        return Err(OssError::NotRealizable);
    }
    let d = space.dimension();
    let mut t = BigRational::one();
    loop {
        let mut lambda = Vec::with_capacity(d);
        let mut p = t.clone();
        for _ in 0..d {
            lambda.push(p.clone());
            p *= &t;
        }
        let ok = restricted.iter().all(|(c, v)| {
            let val = v.iter().zip(&lambda).fold(c.clone(), |acc, (a, l)| acc + a * l);
            !val.is_zero()
        });
        if ok {
            return Ok(lambda);
        }
        t += BigRational::one();
    }
}

fn witness_in(space: &AffineSpace<BigRational>, n: usize, extra: &[Form]) -> Result<Vec<RatPoint>, OssError> {
    let mut avoid: Vec<Form> = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            let [fx, fy] = difference_forms(j, k);
            avoid.push(if space.vanishes(&fx) { fy } else { fx });
        }
    }
    avoid.extend_from_slice(extra);
    let lambda = rationalize(space, &avoid)?;
    let v = space.point(&lambda);
    Ok((1..=n).map(|j| Point::new(v[xv(j)].clone(), v[yv(j)].clone())).collect())
}

/// Scales a rational witness to integer coordinates, keeping label order.
fn grid_of(w: &[RatPoint]) -> Vec<Point<BigInt>> {
    let l = w.iter().fold(BigInt::one(), |l, p| {
        num_integer::lcm(num_integer::lcm(l, p.x.denom().clone()), p.y.denom().clone())
    });
    let scaled: Vec<Point<BigInt>> = w
        .iter()
        .map(|p| {
            Point::new(
                (&p.x * BigRational::from_integer(l.clone())).to_integer(),
                (&p.y * BigRational::from_integer(l.clone())).to_integer(),
            )
        })
        .collect();
    let mx = scaled.iter().map(|p| p.x.clone()).min().unwrap_or_default();
    let my = scaled.iter().map(|p| p.y.clone()).min().unwrap_or_default();
    let g = scaled.iter().fold(BigInt::zero(), |g, p| {
        num_integer::gcd(num_integer::gcd(g, &p.x - &mx), &p.y - &my)
    });
    let g = if g.is_zero() { BigInt::one() } else { g };
    scaled.iter().map(|p| Point::new((&p.x - &mx) / &g, (&p.y - &my) / &g)).collect()
}

/// Checks that labeled points satisfy every square and are pairwise distinct.
pub fn verify_witness<T>(oss: &OrientedSquareSet, points: &[Point<T>]) -> bool
where
    T: Clone + PartialEq + Num + Neg<Output = T>,
{
    if points.len() != oss.order {
        return false;
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return false;
            }
        }
    }
    oss.squares.iter().all(|&[a, b, c, d]| {
        let (za, zb, zc, zd) = (&points[a - 1], &points[b - 1], &points[c - 1], &points[d - 1]);
        let par_x = za.x.clone() - zb.x.clone() + zc.x.clone() - zd.x.clone();
        let par_y = za.y.clone() - zb.y.clone() + zc.y.clone() - zd.y.clone();
        // z_d - z_a = i (z_b - z_a)
        let rot_x = zd.x.clone() - za.x.clone();
        let rot_y = zd.y.clone() - za.y.clone();
        let want_x = -(zb.y.clone() - za.y.clone());
        let want_y = zb.x.clone() - za.x.clone();
        par_x.is_zero() && par_y.is_zero() && rot_x == want_x && rot_y == want_y
    })
}

/// Lattice embedding of a realizable set.
#[derive(Clone, Debug, Serialize)]
pub struct GridEmbedding {
    pub points: Vec<Point<BigInt>>,
    /// Largest coordinate after normalization.
    pub side: BigInt,
    /// Whether `side` exceeds `25^n`.
    pub exceeds_bound: bool,
}

pub fn grid_embed(oss: &OrientedSquareSet) -> Result<GridEmbedding, OssError> {
    let report = is_realizable(oss)?;
    let points = report.grid.ok_or(OssError::NotRealizable)?;
    let side = points.iter().map(|p| p.x.abs().max(p.y.abs())).max().unwrap_or_default();
    let bound = num_traits::pow(BigInt::from(25), oss.order);
    Ok(GridEmbedding { exceeds_bound: side > bound, points, side })
}

/// The six oriented cyclic orders of a 4-set starting at its smallest label.
fn orientations(mut s: [usize; 4]) -> [[usize; 4]; 6] {
    s.sort_unstable();
    let [a, b, c, d] = s;
    [[a, b, c, d], [a, b, d, c], [a, c, b, d], [a, c, d, b], [a, d, b, c], [a, d, c, b]]
}

fn vertex_set(q: &[usize; 4]) -> [usize; 4] {
    let mut s = *q;
    s.sort_unstable();
    s
}

/// Oriented squares outside the set that hold in every solution.
pub fn forced_squares(oss: &OrientedSquareSet) -> Vec<[usize; 4]> {
    let space = free_space(oss);
    let present: Vec<[usize; 4]> = oss.squares.iter().map(vertex_set).collect();
    let n = oss.order;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if present.contains(&[a, b, c, d]) {
                        continue;
                    }
                    for q in orientations([a, b, c, d]) {
                        if square_rows(q).iter().all(|r| space.vanishes(&form(r))) {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Outcome of asking for a realization with no squares beyond the given ones.
#[derive(Clone, Debug, Serialize)]
pub struct StrictReport {
    pub realizable: bool,
    pub forced: Vec<[usize; 4]>,
    pub certificate: Option<(usize, usize)>,
    pub grid: Option<Vec<Point<BigInt>>>,
}

/// Realizability with every square outside the set excluded as well.
pub fn strict_realizability(oss: &OrientedSquareSet) -> Result<StrictReport, OssError> {
    let base = is_realizable(oss)?;
    let forced = forced_squares(oss);
    if !base.realizable || !forced.is_empty() {
        return Ok(StrictReport { realizable: false, forced, certificate: base.certificate, grid: None });
    }
    let space = solve_gauged(oss)?.ok_or(OssError::NotRealizable)?;
    let present: Vec<[usize; 4]> = oss.squares.iter().map(vertex_set).collect();
    let n = oss.order;
    let mut extra = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if present.contains(&[a, b, c, d]) {
                        continue;
                    }
                    for q in orientations([a, b, c, d]) {
                        let rows = square_rows(q);
                        let pick = rows.iter().map(|r| form(r)).find(|f| !space.vanishes(f));
                        extra.push(pick.ok_or(OssError::NotRealizable)?);
                    }
                }
            }
        }
    }
    let w = witness_in(&space, n, &extra)?;
    Ok(StrictReport { realizable: true, forced, certificate: None, grid: Some(grid_of(&w)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oss(n: usize, sq: &[[usize; 4]]) -> OrientedSquareSet {
        OrientedSquareSet::new(n, sq.to_vec()).unwrap()
    }

    fn pts(c: &[(i64, i64)]) -> Vec<GridPoint> {
        c.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn two_by_three_grid_has_two_squares() {
        let set = GridSet::from_coords(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]);
        let o = oss_from_pointset(&set);
        assert_eq!(o.squares(), &[[1, 3, 4, 2], [3, 5, 6, 4]]);
    }

    #[test]
    fn labeled_seven_point_set() {
        let p = pts(&[(0, 0), (0, 1), (1, 1), (1, 0), (0, 2), (2, 3), (3, 1)]);
        let o = oss_from_labeled(&p).unwrap();
        assert_eq!(o.squares(), &[[1, 4, 3, 2], [4, 7, 6, 5]]);
        assert!(verify_witness(&o, &p));
    }

    #[test]
    fn system_shape() {
        let o = oss(4, &[[1, 3, 4, 2]]);
        let s = build_system(&o);
        assert_eq!(s.vars, 8);
        assert_eq!(s.rows.len(), 4);
        assert_eq!(s.rows[0], vec![(0, 1), (4, -1), (6, 1), (2, -1)]);
    }

    #[test]
    fn single_square_is_rigid_under_the_gauge() {
        let o = oss(4, &[[1, 3, 4, 2]]);
        let space = solve_gauged(&o).unwrap().unwrap();
        assert_eq!(space.dimension(), 0);
        let r = is_realizable(&o).unwrap();
        assert!(r.realizable);
        assert_eq!(r.free_dimension, 4);
        let w = r.witness.unwrap();
        assert!(verify_witness(&o, &w));
    }

    #[test]
    fn parse_round_trip() {
        let text = "n=7\n1 4 3 2\n4 7 6 5\n";
        let o = OrientedSquareSet::parse(text).unwrap();
        assert_eq!(o.to_string(), text);
        assert!(matches!(OrientedSquareSet::parse("7\n"), Err(OssError::Parse { line: 1, .. })));
        assert!(matches!(
            OrientedSquareSet::parse("n=3\n1 2 3 4\n"),
            Err(OssError::LabelOutOfRange { label: 4, order: 3 })
        ));
        assert!(matches!(OrientedSquareSet::parse("n=5\n1 2 2 4\n"), Err(OssError::RepeatedVertex(_))));
        assert!(matches!(OrientedSquareSet::parse("n=5\n1 2 3\n"), Err(OssError::Parse { line: 2, .. })));
    }

    #[test]
    fn moment_curve_choice() {
        let space = AffineSpace {
            particular: vec![BigRational::zero(); 2],
            basis: vec![
                vec![BigRational::one(), BigRational::zero()],
                vec![BigRational::zero(), BigRational::one()],
            ],
        };
        let avoid = vec![form(&[(0, 1)]), form(&[(1, 1)]), form(&[(0, 1), (1, -1)])];
        let l = rationalize(&space, &avoid).unwrap();
        assert_eq!(l, vec![BigRational::from_integer(2.into()), BigRational::from_integer(4.into())]);
        let shifted = AffineSpace {
            particular: vec![BigRational::one(), BigRational::zero()],
            basis: vec![vec![BigRational::one(), BigRational::zero()]],
        };
        // the constant and the first parameter must not cancel for every t
        assert!(rationalize(&shifted, &[form(&[(0, 1)])]).is_ok());
        let one = AffineSpace { particular: vec![BigRational::zero()], basis: vec![vec![BigRational::one()]] };
        assert_eq!(rationalize(&one, &[form(&[(0, 1)])]).unwrap(), vec![BigRational::one()]);
    }
}
