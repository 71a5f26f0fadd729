//! The 0/1 program bounding the triangle count, exported as an LP file, and the
//! assignment induced by a concrete point set.
//!
//! Labels are `1..=n`; a point set's labels follow its sorted point order. The
//! program has one `x` per 3-set and one `y` per set of size at least four.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::is_1ext_obtainable;
use crate::geometry::rits;
use crate::tables::s_rit_exact;
use crate::{GridSet, PointSet};

pub const MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Base,
    Mod8,
    Mod9,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Base => "base",
            Variant::Mod8 => "mod8",
            Variant::Mod9 => "mod9",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        [Variant::Base, Variant::Mod8, Variant::Mod9].into_iter().find(|v| v.name() == s)
    }

    /// `(zeroed sizes, guarded size, guard coefficient)` of the modified programs.
    fn extra(self) -> Option<(std::ops::RangeInclusive<usize>, usize, i64)> {
        match self {
            Variant::Base => None,
            Variant::Mod8 => Some((6..=8, 5, 8)),
            Variant::Mod9 => Some((7..=9, 6, 11)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IlpError {
    #[error("variant {variant} is not defined for n={n}")]
    Unsupported { n: usize, variant: &'static str },
    #[error("point set has {got} points, expected {n}")]
    WrongSize { n: usize, got: usize },
    #[error("induced assignment violates {0:?}; the construction guarantees feasibility")]
    Contradiction(Vec<String>),
}

/// A variable, identified by the bitmask of its label set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u32),
    Y(u32),
}

fn labels(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
}

fn joined(mask: u32) -> String {
    labels(mask).map(|l| l.to_string()).collect::<Vec<_>>().join("_")
}

impl Var {
    pub fn name(self) -> String {
        match self {
            Var::X(m) => format!("x_{}", joined(m)),
            Var::Y(m) => format!("y_{}_{}", m.count_ones(), joined(m)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// 1 to 3 for the families of the base program, 4 and 5 for the zeroing and guard rows.
    pub family: u8,
    pub terms: Vec<(i64, Var)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn holds(&self, value: impl Fn(Var) -> bool) -> bool {
        let lhs: i64 = self.terms.iter().filter(|(_, v)| value(*v)).map(|(c, _)| c).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ilp {
    pub n: usize,
    pub variant: Variant,
    pub x_vars: Vec<u32>,
    pub y_vars: Vec<u32>,
    pub constraints: Vec<Constraint>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    out.sort_by_key(|&m| labels(m).collect::<Vec<_>>());
    out
}

fn triples_within(t: u32) -> impl Iterator<Item = u32> {
    let bits: Vec<u32> = (0..32).filter(|i| t >> i & 1 == 1).collect();
    let k = bits.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                out.push(1 << bits[a] | 1 << bits[b] | 1 << bits[c]);
            }
        }
    }
    out.into_iter()
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

impl Ilp {
    pub fn build(n: usize, variant: Variant) -> Result<Ilp, IlpError> {
        let ok = match variant {
            Variant::Base => (3..=MAX_N).contains(&n),
            Variant::Mod8 => n == 8,
            Variant::Mod9 => n == 9,
        };
        if !ok {
            return Err(IlpError::Unsupported { n, variant: variant.name() });
        }
        let x_vars = subsets_of_size(n, 3);
        let y_vars: Vec<u32> = (4..=n).flat_map(|k| subsets_of_size(n, k)).collect();
        let mut constraints = Vec::new();
        let xs = |t: u32| triples_within(t).map(|s| (1, Var::X(s))).collect::<Vec<_>>();

        for k in 4..n {
            let cap = s_rit_exact(k).expect("exact triangle values cover sizes up to 11") as i64;
            for t in subsets_of_size(n, k) {
                constraints.push(Constraint {
                    name: format!("c1_{}", joined(t)),
                    family: 1,
                    terms: xs(t),
                    sense: Sense::Le,
                    rhs: cap,
                });
            }
        }
        for t in subsets_of_size(n, 4) {
            let mut terms = vec![(-3, Var::Y(t))];
            terms.extend(xs(t));
            constraints.push(Constraint { name: format!("c2_{}", joined(t)), family: 2, terms, sense: Sense::Le, rhs: 1 });
        }
        for k in 5..=n {
            let c = choose2(k - 1);
            for t in subsets_of_size(n, k) {
                for drop in labels(t) {
                    let bit = 1u32 << (drop - 1);
                    let r = t & !bit;
                    let mut terms = vec![(c, Var::Y(r)), (-c, Var::Y(t))];
                    terms.extend(triples_within(t).filter(|s| s & bit != 0).map(|s| (1, Var::X(s))));
                    constraints.push(Constraint {
                        name: format!("c3_{}_{}", joined(t), drop),
                        family: 3,
                        terms,
                        sense: Sense::Le,
                        rhs: c,
                    });
                }
            }
        }
        if let Some((zeroed, guarded, coeff)) = variant.extra() {
            for k in zeroed {
                for t in subsets_of_size(n, k) {
                    constraints.push(Constraint {
                        name: format!("z_{}", joined(t)),
                        family: 4,
                        terms: vec![(1, Var::Y(t))],
                        sense: Sense::Eq,
                        rhs: 0,
                    });
                }
            }
            for t in subsets_of_size(n, guarded) {
                let mut terms = vec![(-coeff, Var::Y(t))];
                terms.extend(xs(t));
                constraints.push(Constraint { name: format!("g_{}", joined(t)), family: 5, terms, sense: Sense::Ge, rhs: 0 });
            }
        }
        Ok(Ilp { n, variant, x_vars, y_vars, constraints })
    }

    pub fn family_count(&self, family: u8) -> usize {
        self.constraints.iter().filter(|c| c.family == family).count()
    }

    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ triangle bound program, n = {}, variant {}", self.n, self.variant.name());
        out.push_str("Maximize\n obj:");
        write_terms(&mut out, self.x_vars.iter().map(|&m| (1, Var::X(m))));
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}:", c.name);
            write_terms(&mut out, c.terms.iter().copied());
            let op = match c.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            let _ = writeln!(out, " {op} {}", c.rhs);
        }
        out.push_str("Binary\n");
        for v in self.x_vars.iter().map(|&m| Var::X(m)).chain(self.y_vars.iter().map(|&m| Var::Y(m))) {
            let _ = writeln!(out, " {}", v.name());
        }
        out.push_str("End\n");
        out
    }
}

fn write_terms(out: &mut String, terms: impl Iterator<Item = (i64, Var)>) {
    for (i, (c, v)) in terms.enumerate() {
        if i > 0 && i % 8 == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 { '-' } else { '+' };
        let name = v.name();
        match c.abs() {
            1 if i == 0 && c > 0 => {
                let _ = write!(out, " {name}");
            }
            1 => {
                let _ = write!(out, " {sign} {name}");
            }
            a if i == 0 && c > 0 => {
                let _ = write!(out, " {a} {name}");
            }
            a => {
                let _ = write!(out, " {sign} {a} {name}");
            }
        }
    }
}

pub fn ilp_export(n: usize, variant: Variant) -> Result<String, IlpError> {
    Ok(Ilp::build(n, variant)?.to_lp())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpAssignment {
    pub n: usize,
    pub variant: Variant,
    /// Masks of the 3-sets set to one.
    pub x_true: Vec<u32>,
    /// Masks of the sets of size at least four set to one.
    pub y_true: Vec<u32>,
    pub objective: u64,
    pub feasible: bool,
    pub violated: Vec<String>,
}

/// Sets `x_S` for the triangles of `set` and `y_T` for the restrictions obtainable by 1-extension,
/// then checks every constraint. For the base program a violation is reported as an error; the
/// modified programs encode extra hypotheses, so violations there are ordinary results.
pub fn ilp_assignment_from_pointset(set: &GridSet, n: usize, variant: Variant) -> Result<IlpAssignment, IlpError> {
    if set.len() != n {
        return Err(IlpError::WrongSize { n, got: set.len() });
    }
    let ilp = Ilp::build(n, variant)?;
    let tri: HashSet<u32> = rits(set)
        .expect("grid coordinates are exact")
        .iter()
        .map(|t| t.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    let pts = set.points();
    let y: HashSet<u32> = ilp
        .y_vars
        .iter()
        .copied()
        .filter(|&t| {
            let sub = PointSet::new(labels(t).map(|l| pts[l as usize - 1]).collect());
            is_1ext_obtainable(&sub)
        })
        .collect();
    let value = |v: Var| match v {
        Var::X(m) => tri.contains(&m),
        Var::Y(m) => y.contains(&m),
    };
    let violated: Vec<String> = ilp.constraints.iter().filter(|c| !c.holds(value)).map(|c| c.name.clone()).collect();
    if variant == Variant::Base && !violated.is_empty() {
        return Err(IlpError::Contradiction(violated));
    }
    let mut x_true: Vec<u32> = ilp.x_vars.iter().copied().filter(|m| tri.contains(m)).collect();
    x_true.sort_unstable();
    let y_true: Vec<u32> = ilp.y_vars.iter().copied().filter(|m| y.contains(m)).collect();
    Ok(IlpAssignment {
        n,
        variant,
        objective: x_true.len() as u64,
        x_true,
        y_true,
        feasible: violated.is_empty(),
        violated,
    })
}
