//! Upper bounds from counting, averaging, codes and mixed recursions, with
//! the best known lower bounds alongside.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tables;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("parameters out of range: {0}")]
    Parameters(String),
    #[error("no tabulated value for n={0}")]
    TableGap(usize),
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn small(v: BigUint) -> u64 {
    v.to_u64().expect("bound fits in u64")
}

/// Triangle upper bounds: every pair lies on at most six triangles, and the sharper quadratic bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RitUpper {
    pub trivial: u64,
    pub improved: Option<u64>,
}

pub fn rit_upper(n: usize) -> RitUpper {
    let n = n as u64;
    let trivial = n * n.saturating_sub(1);
    let improved = (n >= 3).then(|| (2 * (n - 1) * (n - 1) - 5) / 3);
    RitUpper { trivial, improved }
}

/// Square upper bounds: every pair lies on at most half a square, and the `(n^2 - 1) / 8` bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareUpper {
    pub pairs: u64,
    pub eighth: u64,
}

pub fn square_upper(n: usize) -> SquareUpper {
    let n = n as u64;
    SquareUpper { pairs: n * n.saturating_sub(1) / 4, eighth: (n * n).saturating_sub(1) / 8 }
}

/// If every `k`-subset has at most `b` triangles, the whole `n`-set has at most this many.
pub fn averaging_rit(n: usize, k: usize, b: u64) -> Result<u64, BoundError> {
    if k < 3 || k >= n {
        return Err(BoundError::Parameters(format!("need 3 <= k < n, got n={n}, k={k}")));
    }
    Ok(small(binom(n as u64, 3) * b / binom(k as u64, 3)))
}

/// Squares guaranteed in the best `n_sub`-subset of an `n`-set with `m` squares.
pub fn averaging_square_subconfig(n: usize, n_sub: usize, m: u64) -> Result<u64, BoundError> {
    if n_sub < 4 || n_sub >= n {
        return Err(BoundError::Parameters(format!("need 4 <= n_sub < n, got n={n}, n_sub={n_sub}")));
    }
    let num = binom(n as u64 - 4, n_sub as u64 - 4) * m;
    let den = binom(n as u64, n_sub as u64);
    Ok(small(Integer::div_ceil(&num, &den)))
}

/// Largest `m` compatible with every `n_sub`-subset having at most `b` squares.
pub fn averaging_square_upper(n: usize, n_sub: usize, b: u64) -> Result<u64, BoundError> {
    averaging_square_subconfig(n, n_sub, 0)?;
    let num = binom(n as u64, n_sub as u64) * b;
    let den = binom(n as u64 - 4, n_sub as u64 - 4);
    Ok(small(num / den))
}

/// Degree bounds for an `(n, m)`-configuration: `(max possible minimum, min possible maximum)`.
pub fn degree_bounds(n: usize, m: u64) -> (u64, u64) {
    let four_m = 4 * m;
    let n = n as u64;
    (four_m / n, four_m.div_ceil(n))
}

/// Triangle bound for a set whose 1-extension maximal subconfiguration has `inner` triangles
/// and leaves `outside` points.
pub fn one_ext_maximal_bound(inner: u64, outside: usize) -> Result<u64, BoundError> {
    let exact = tables::s_rit_exact(outside).ok_or(BoundError::TableGap(outside))?;
    let k = outside as u64;
    Ok(inner + k * k.saturating_sub(1) + exact)
}

/// Maximum of `S_sq(n') + S_mixed(n - n')` over the admissible sizes `n'` of a 2-extension
/// maximal subconfiguration.
pub fn mixed_square_upper(n: usize, admissible: RangeInclusive<usize>) -> Result<u64, BoundError> {
    if admissible.is_empty() || *admissible.end() > n {
        return Err(BoundError::Parameters(format!("admissible sizes {admissible:?} for n={n}")));
    }
    let mut best = 0;
    for k in admissible {
        let sq = tables::s_square_exact(k).ok_or(BoundError::TableGap(k))?;
        let mixed = tables::s_mixed_exact(n - k).ok_or(BoundError::TableGap(n - k))?;
        best = best.max(sq + mixed);
    }
    Ok(best)
}

/// `mixed_square_upper` over the default range `6..=n`.
pub fn mixed_square_upper_default(n: usize) -> Result<u64, BoundError> {
    mixed_square_upper(n, 6.min(n)..=n)
}

pub fn a_n_6_4(n: usize) -> Result<u64, BoundError> {
    if n == 0 {
        return Err(BoundError::Parameters("n must be positive".into()));
    }
    tables::a_n_6_4(n).ok_or(BoundError::TableGap(n))
}

/// The counting argument for 13 points with no shared pair: three squares through a common
/// vertex, plus an eighth of the summed per-complement caps.
pub fn hamming13_upper_with(caps: &[u64]) -> u64 {
    3 + caps.iter().sum::<u64>() / 8
}

pub fn hamming13_upper() -> u64 {
    let caps: Vec<u64> = (2..=13).map(|i| if i <= 10 { 4 } else { 3 }).collect();
    hamming13_upper_with(&caps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Rit,
    Square,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Rit => "rit",
            Family::Square => "square",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: Family,
    pub n: usize,
    pub upper: BTreeMap<String, u64>,
    pub best_upper: Option<u64>,
    pub best_lower: Option<u64>,
}

pub fn bound_report(family: Family, n: usize) -> BoundReport {
    let mut upper = BTreeMap::new();
    let best_lower = match family {
        Family::Rit => {
            let r = rit_upper(n);
            upper.insert("trivial".to_string(), r.trivial);
            if let Some(v) = r.improved {
                upper.insert("improved".to_string(), v);
            }
            if let Some(v) = tables::s_rit_exact(n) {
                upper.insert("exact".to_string(), v);
            }
            tables::rit_lower(n)
        }
        Family::Square => {
            let s = square_upper(n);
            upper.insert("pairs".to_string(), s.pairs);
            upper.insert("eighth".to_string(), s.eighth);
            if let Some(v) = tables::s_square_exact(n) {
                upper.insert("exact".to_string(), v);
            }
            tables::square_lower(n)
        }
    };
    let best_upper = upper.values().copied().min();
    BoundReport { family, n, upper, best_upper, best_lower }
}
