//! Similarity classes of point sets, reflections included.
//!
//! Two keys are provided. [`canonical_key`] sweeps every ordered pair of points
//! as the frame `0, 1` and keeps the lexicographically least image; it accepts
//! rational input and is the reference definition. [`class_key`] is the
//! enumeration key for lattice sets: it frames the set at its centroid and only
//! tries the points farthest from it, so it costs a handful of sorts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{GeometryError, Point, PointSet};
use crate::scalar::Coord;
use crate::GridPoint;

/// Canonical form of a similarity class.
///
/// Layout: a big-endian `u32` point count, then per point `x` then `y`, each
/// as numerator and denominator of the reduced fraction; every integer is a
/// big-endian `u32` byte length followed by its two's-complement bytes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The normalized image the key encodes.
    pub fn decode(&self) -> Vec<Point<BigRational>> {
        let mut pos = 0;
        let b = &self.0;
        let word = |pos: &mut usize| {
            let len = u32::from_be_bytes(b[*pos..*pos + 4].try_into().unwrap()) as usize;
            *pos += 4;
            let v = BigInt::from_signed_bytes_be(&b[*pos..*pos + len]);
            *pos += len;
            v
        };
        let count = word(&mut pos);
        let count: usize = count.try_into().unwrap_or(0);
        (0..count)
            .map(|_| {
                let xn = word(&mut pos);
                let xd = word(&mut pos);
                let yn = word(&mut pos);
                let yd = word(&mut pos);
                Point::new(Ratio::new(xn, xd), Ratio::new(yn, yd))
            })
            .collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey{self}")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.decode().iter().map(|p| format!("({}, {})", p.x, p.y)).collect();
        write!(f, "[{}]", pts.join(", "))
    }
}

fn push_int(out: &mut Vec<u8>, v: &BigInt) {
    let bytes = v.to_signed_bytes_be();
    out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
    out.extend_from_slice(&bytes);
}

type Gauss = (BigInt, BigInt);

/// Clears denominators so every point becomes a Gaussian integer.
fn to_gaussian<T: Coord>(points: &[Point<Ratio<T>>]) -> Vec<Gauss> {
    let mut l = BigInt::one();
    for p in points {
        l = l.lcm(&p.x.denom().to_bigint());
        l = l.lcm(&p.y.denom().to_bigint());
    }
    let mut out: Vec<Gauss> = points
        .iter()
        .map(|p| {
            let sx = &l / p.x.denom().to_bigint();
            let sy = &l / p.y.denom().to_bigint();
            (p.x.numer().to_bigint() * sx, p.y.numer().to_bigint() * sy)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Compares `a / na` with `b / nb` coordinatewise in lexicographic order, `na, nb > 0`.
fn cmp_scaled(a: &[Gauss], na: &BigInt, b: &[Gauss], nb: &BigInt) -> Ordering {
    for (u, v) in a.iter().zip(b) {
        let o = (&u.0 * nb).cmp(&(&v.0 * na)).then_with(|| (&u.1 * nb).cmp(&(&v.1 * na)));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Reference canonical key: minimum over all frames `(p, q)` and both orientations.
pub fn canonical_key<T: Coord>(points: &[Point<Ratio<T>>]) -> CanonicalKey {
    let z = to_gaussian(points);
    let n = z.len();
    let mut best: Option<(Vec<Gauss>, BigInt)> = None;
    if n == 1 {
        best = Some((vec![(BigInt::zero(), BigInt::zero())], BigInt::one()));
    }
    for conj in [false, true] {
        let zs: Vec<Gauss> = z.iter().map(|(x, y)| (x.clone(), if conj { -y } else { y.clone() })).collect();
        for p in &zs {
            for q in &zs {
                if p == q {
                    continue;
                }
                let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
                let norm = &dx * &dx + &dy * &dy;
                let mut img: Vec<Gauss> = zs
                    .iter()
                    .map(|w| {
                        let (a, b) = (&w.0 - &p.0, &w.1 - &p.1);
                        (&a * &dx + &b * &dy, &b * &dx - &a * &dy)
                    })
                    .collect();
                img.sort();
                let better = match &best {
                    None => true,
                    Some((bi, bn)) => cmp_scaled(&img, &norm, bi, bn) == Ordering::Less,
                };
                if better {
                    best = Some((img, norm));
                }
            }
        }
    }
    let mut out = Vec::new();
    push_int(&mut out, &BigInt::from(n));
    if let Some((img, norm)) = best {
        for (x, y) in img {
            for v in [x, y] {
                let r = Ratio::new(v, norm.clone());
                push_int(&mut out, r.numer());
                push_int(&mut out, r.denom());
            }
        }
    }
    CanonicalKey(out)
}

/// Reference canonical key of an integer point set.
pub fn canonical_key_of_set<T: Coord>(set: &PointSet<T>) -> CanonicalKey {
    let pts: Vec<Point<Ratio<T>>> = set.iter().map(Point::to_ratio).collect();
    canonical_key(&pts)
}

pub fn are_similar<T: Coord>(a: &[Point<Ratio<T>>], b: &[Point<Ratio<T>>]) -> bool {
    canonical_key(a) == canonical_key(b)
}

/// Fast canonical key of a lattice point set, as a primitive integer vector.
///
/// The first entry tags the variant: 0 for plain sets, 1 for pointed sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassKey(Box<[i64]>);

impl ClassKey {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassKey{:?}", &self.0)
    }
}

fn frame_min(w: &[(i128, i128)], candidates: &[usize]) -> Result<Vec<(i128, i128)>, GeometryError> {
    let mut best: Vec<(i128, i128)> = Vec::new();
    let mut cur: Vec<(i128, i128)> = Vec::with_capacity(w.len());
    let ovf = GeometryError::Overflow;
    for &q in candidates {
        for conj in [false, true] {
            let (c, d) = if conj { (w[q].0, -w[q].1) } else { w[q] };
            cur.clear();
            for &(a, b) in w {
                let b = if conj { -b } else { b };
                let re = a.checked_mul(c).and_then(|u| b.checked_mul(d).and_then(|v| u.checked_add(v)));
                let im = b.checked_mul(c).and_then(|u| a.checked_mul(d).and_then(|v| u.checked_sub(v)));
                cur.push((re.ok_or(ovf.clone())?, im.ok_or(ovf.clone())?));
            }
            cur.sort_unstable();
            if best.is_empty() || cur < best {
                std::mem::swap(&mut best, &mut cur);
            }
        }
    }
    Ok(best)
}

fn pack(tag: i64, img: Vec<(i128, i128)>) -> Result<ClassKey, GeometryError> {
    let g = img.iter().fold(0i128, |g, &(a, b)| g.gcd(&a).gcd(&b));
    let g = if g == 0 { 1 } else { g };
    let mut out = Vec::with_capacity(1 + 2 * img.len());
    out.push(tag);
    for (a, b) in img {
        out.push(i64::try_from(a / g).map_err(|_| GeometryError::Overflow)?);
        out.push(i64::try_from(b / g).map_err(|_| GeometryError::Overflow)?);
    }
    Ok(ClassKey(out.into_boxed_slice()))
}

fn farthest(w: &[(i128, i128)]) -> Result<Vec<usize>, GeometryError> {
    let mut norms = Vec::with_capacity(w.len());
    for &(a, b) in w {
        let n = a.checked_mul(a).and_then(|u| b.checked_mul(b).and_then(|v| u.checked_add(v)));
        norms.push(n.ok_or(GeometryError::Overflow)?);
    }
    let m = norms.iter().copied().max().unwrap_or(0);
    Ok((0..w.len()).filter(|&i| norms[i] == m && m > 0).collect())
}

/// Fast canonical key of a set of distinct lattice points.
pub fn class_key(points: &[GridPoint]) -> Result<ClassKey, GeometryError> {
    let n = points.len() as i128;
    let sx: i128 = points.iter().map(|p| p.x as i128).sum();
    let sy: i128 = points.iter().map(|p| p.y as i128).sum();
    let w: Vec<(i128, i128)> = points.iter().map(|p| (n * p.x as i128 - sx, n * p.y as i128 - sy)).collect();
    let cand = farthest(&w)?;
    if cand.is_empty() {
        return pack(0, vec![(0, 0); points.len()]);
    }
    pack(0, frame_min(&w, &cand)?)
}

/// Fast canonical key of a lattice set with one marked point.
pub fn pointed_class_key(points: &[GridPoint], marked: usize) -> Result<ClassKey, GeometryError> {
    let m = points[marked];
    let w: Vec<(i128, i128)> =
        points.iter().map(|p| (p.x as i128 - m.x as i128, p.y as i128 - m.y as i128)).collect();
    let cand = farthest(&w)?;
    if cand.is_empty() {
        return pack(1, vec![(0, 0)]);
    }
    pack(1, frame_min(&w, &cand)?)
}

/// Scales a rational set to the integer lattice with content one and the
/// lower-left bounding corner at the origin.
pub fn normalize_to_grid_big<T: Coord>(points: &[Point<Ratio<T>>]) -> PointSet<BigInt> {
    let z = to_gaussian(points);
    let Some(first) = z.first() else {
        return PointSet::new(Vec::new());
    };
    let mx = z.iter().map(|p| &p.0).min().unwrap_or(&first.0).clone();
    let my = z.iter().map(|p| &p.1).min().unwrap_or(&first.1).clone();
    let mut g = BigInt::zero();
    for (x, y) in &z {
        g = g.gcd(&(x - &mx)).gcd(&(y - &my));
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    PointSet::new(z.iter().map(|(x, y)| Point::new((x - &mx) / &g, (y - &my) / &g)).collect())
}

/// [`normalize_to_grid_big`] narrowed to `i64` coordinates.
pub fn normalize_to_grid<T: Coord>(points: &[Point<Ratio<T>>]) -> Result<PointSet, GeometryError> {
    let big = normalize_to_grid_big(points);
    let mut out = Vec::with_capacity(big.len());
    for p in &big {
        let x = i64::try_from(&p.x).map_err(|_| GeometryError::Overflow)?;
        let y = i64::try_from(&p.y).map_err(|_| GeometryError::Overflow)?;
        out.push(Point::new(x, y));
    }
    Ok(PointSet::new(out))
}

/// Rational maximal absolute coordinate, used to report grid sizes.
pub fn max_abs_coordinate(set: &PointSet<BigInt>) -> BigInt {
    set.iter().map(|p| p.x.abs().max(p.y.abs())).max().unwrap_or_else(BigInt::zero)
}
