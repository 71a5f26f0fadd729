//! Record point sets shipped as grid text, and their verification.
//!
//! Format: records separated by a line `---`; header lines `id=`, `family=`,
//! `n=`, `expected=`; then `grid:` followed by rows over `x` and `.`. A `#`
//! starts a comment line. Cell `(col, row)` is the point `(col, -row)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    classify_pair, count_axis_parallel_squares, count_rit_by_rotation, count_squares, squares, srit_minus_3sq,
};
use crate::similarity::{class_key, ClassKey};
use crate::{tables, GridPoint, GridSet, PairRole, Point};

pub const SHIPPED: &str = include_str!("../data/corpus.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Rit,
    Mixed,
    Square,
    HammingFree,
    AxisParallel,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Rit, Family::Mixed, Family::Square, Family::HammingFree, Family::AxisParallel];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rit => "rit",
            Family::Mixed => "mixed",
            Family::Square => "square",
            Family::HammingFree => "hamming-free",
            Family::AxisParallel => "axis-parallel",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("line {line}: unknown header {text:?}")]
    UnknownHeader { line: usize, text: String },
    #[error("line {line}: bad value for {field}: {text:?}")]
    BadValue { line: usize, field: &'static str, text: String },
    #[error("line {line}: unknown family {text:?}")]
    UnknownFamily { line: usize, text: String },
    #[error("line {line}: duplicate field {field}")]
    DuplicateField { line: usize, field: &'static str },
    #[error("record ending at line {line}: missing field {field}")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: row has {got} cells, expected {expected}")]
    Ragged { line: usize, expected: usize, got: usize },
    #[error("line {line}: unknown grid character {ch:?}")]
    UnknownChar { line: usize, ch: char },
    #[error("record starting at line {line}: grid has {got} points, header says {expected}")]
    WrongCount { line: usize, expected: usize, got: usize },
    #[error("record ending at line {line}: empty grid")]
    EmptyGrid { line: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub family: Family,
    pub n: usize,
    pub expected: i64,
    pub grid: Vec<String>,
    /// 1-based line of the record's first header.
    pub line: usize,
}

impl CorpusRecord {
    pub fn points(&self) -> GridSet {
        grid_points(&self.grid)
    }
}

fn grid_points(rows: &[String]) -> GridSet {
    let mut pts = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, ch) in row.chars().enumerate() {
            if ch == 'x' {
                pts.push(Point::new(c as i64, -(r as i64)));
            }
        }
    }
    GridSet::new(pts)
}

#[derive(Default)]
struct Partial {
    start: usize,
    id: Option<String>,
    family: Option<Family>,
    n: Option<usize>,
    expected: Option<i64>,
    grid: Option<Vec<String>>,
    width: usize,
}

impl Partial {
    fn is_empty(&self) -> bool {
        self.id.is_none() && self.family.is_none() && self.n.is_none() && self.expected.is_none() && self.grid.is_none()
    }

    fn finish(self, end: usize) -> Result<CorpusRecord, CorpusError> {
        let missing = |field| CorpusError::MissingField { line: end, field };
        let grid = self.grid.ok_or(missing("grid"))?;
        if grid.is_empty() {
            return Err(CorpusError::EmptyGrid { line: end });
        }
        let rec = CorpusRecord {
            id: self.id.ok_or(missing("id"))?,
            family: self.family.ok_or(missing("family"))?,
            n: self.n.ok_or(missing("n"))?,
            expected: self.expected.ok_or(missing("expected"))?,
            grid,
            line: self.start,
        };
        let got = rec.grid.iter().map(|r| r.matches('x').count()).sum();
        if got != rec.n {
            return Err(CorpusError::WrongCount { line: rec.line, expected: rec.n, got });
        }
        Ok(rec)
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRecord>, CorpusError> {
    let mut out = Vec::new();
    let mut cur = Partial::default();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let s = raw.trim_end();
        if s.starts_with('#') || (s.is_empty() && cur.grid.is_none()) {
            continue;
        }
        if s == "---" {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur).finish(line)?);
            }
            continue;
        }
        if cur.is_empty() {
            cur.start = line;
        }
        if let Some(rows) = cur.grid.as_mut() {
            if s.is_empty() {
                continue;
            }
            if let Some(ch) = s.chars().find(|&c| c != 'x' && c != '.') {
                return Err(CorpusError::UnknownChar { line, ch });
            }
            let w = s.chars().count();
            if rows.is_empty() {
                cur.width = w;
            } else if w != cur.width {
                return Err(CorpusError::Ragged { line, expected: cur.width, got: w });
            }
            rows.push(s.to_string());
            continue;
        }
        if s == "grid:" {
            cur.grid = Some(Vec::new());
            continue;
        }
        let Some((key, value)) = s.split_once('=') else {
            return Err(CorpusError::UnknownHeader { line, text: s.to_string() });
        };
        let value = value.trim();
        let bad = |field| CorpusError::BadValue { line, field, text: value.to_string() };
        let dup = |field| CorpusError::DuplicateField { line, field };
        match key.trim() {
            "id" => {
                if cur.id.replace(value.to_string()).is_some() {
                    return Err(dup("id"));
                }
            }
            "family" => {
                let f = Family::parse(value).ok_or(CorpusError::UnknownFamily { line, text: value.to_string() })?;
                if cur.family.replace(f).is_some() {
                    return Err(dup("family"));
                }
            }
            "n" => {
                let n = value.parse().map_err(|_| bad("n"))?;
                if cur.n.replace(n).is_some() {
                    return Err(dup("n"));
                }
            }
            "expected" => {
                let e = value.parse().map_err(|_| bad("expected"))?;
                if cur.expected.replace(e).is_some() {
                    return Err(dup("expected"));
                }
            }
            _ => return Err(CorpusError::UnknownHeader { line, text: s.to_string() }),
        }
    }
    if !cur.is_empty() {
        out.push(cur.finish(last)?);
    }
    Ok(out)
}

pub fn shipped_corpus() -> Vec<CorpusRecord> {
    parse_corpus(SHIPPED).expect("shipped corpus parses")
}

/// Minimal bounding-box rendering, top row first.
pub fn render_grid(set: &GridSet) -> Vec<String> {
    let pts = set.points();
    if pts.is_empty() {
        return Vec::new();
    }
    let (x0, x1) = (pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.x).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.y).min().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
    (y0..=y1)
        .rev()
        .map(|y| (x0..=x1).map(|x| if set.contains(&Point::new(x, y)) { 'x' } else { '.' }).collect())
        .collect()
}

/// Number of pairs lying in two or more squares.
pub fn shared_square_pairs(set: &GridSet) -> usize {
    let mut seen: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for sq in squares(set).expect("grid coordinates are small") {
        for a in 0..4 {
            for b in a + 1..4 {
                let (i, j) = (sq[a].min(sq[b]), sq[a].max(sq[b]));
                *seen.entry((i, j)).or_default() += 1;
            }
        }
    }
    seen.values().filter(|&&c| c > 1).count()
}

/// Pairs that are the leftmost edge of one square and the second leftmost edge of another.
pub fn leftmost_edge_conflicts(set: &GridSet) -> Vec<(GridPoint, GridPoint)> {
    let pts = set.points();
    let mut roles: BTreeMap<(usize, usize), (bool, bool)> = BTreeMap::new();
    for sq in squares(set).expect("grid coordinates are small") {
        let corners = sq.map(|i| pts[i]);
        for a in 0..4 {
            for b in a + 1..4 {
                let role = classify_pair(&corners, &pts[sq[a]], &pts[sq[b]]).expect("a square from the square list");
                let e = roles.entry((sq[a].min(sq[b]), sq[a].max(sq[b]))).or_default();
                match role {
                    PairRole::E1 => e.0 = true,
                    PairRole::E2 => e.1 = true,
                    _ => {}
                }
            }
        }
    }
    roles.into_iter().filter(|(_, (a, b))| *a && *b).map(|((i, j), _)| (pts[i], pts[j])).collect()
}

/// The family's metric: triangles, triangles minus three times squares, or squares of the given kind.
pub fn family_metric(family: Family, set: &GridSet) -> i64 {
    let sq = || count_squares(set).expect("grid coordinates are small") as i64;
    match family {
        Family::Rit => count_rit_by_rotation(set).expect("grid coordinates are small") as i64,
        Family::Mixed => srit_minus_3sq(set).expect("grid coordinates are small"),
        Family::Square | Family::HammingFree => sq(),
        Family::AxisParallel => count_axis_parallel_squares(set).expect("grid coordinates are small") as i64,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordResult {
    pub id: String,
    pub family: Family,
    pub n: usize,
    pub expected: i64,
    pub computed: i64,
    /// Pairs shared by two squares; only a failure for the hamming-free family.
    pub shared_pairs: usize,
    pub leftmost_conflicts: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTally {
    pub family: Family,
    pub n: usize,
    pub records: usize,
    pub distinct: usize,
    /// Known number of dissimilar record sets, where tabulated.
    pub expected: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub records: Vec<RecordResult>,
    pub tallies: Vec<ClassTally>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass) && self.tallies.iter().all(|t| t.pass)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .records
            .iter()
            .filter(|r| !r.pass)
            .map(|r| {
                format!(
                    "{}: expected {}, computed {}, shared pairs {}, leftmost conflicts {}",
                    r.id, r.expected, r.computed, r.shared_pairs, r.leftmost_conflicts
                )
            })
            .collect();
        out.extend(self.tallies.iter().filter(|t| !t.pass).map(|t| {
            format!(
                "{} n={}: {} records, {} distinct classes, expected {:?}",
                t.family.name(),
                t.n,
                t.records,
                t.distinct,
                t.expected
            )
        }));
        out
    }
}

fn expected_classes(family: Family, n: usize) -> Option<usize> {
    match family {
        Family::Rit => tables::rit_record_classes(n),
        Family::Square => tables::square_record_classes(n),
        _ => None,
    }
}

pub fn verify_record(rec: &CorpusRecord) -> RecordResult {
    let set = rec.points();
    let computed = family_metric(rec.family, &set);
    let shared_pairs = if rec.family == Family::HammingFree { shared_square_pairs(&set) } else { 0 };
    let leftmost_conflicts = leftmost_edge_conflicts(&set).len();
    RecordResult {
        id: rec.id.clone(),
        family: rec.family,
        n: rec.n,
        expected: rec.expected,
        computed,
        shared_pairs,
        leftmost_conflicts,
        pass: computed == rec.expected && shared_pairs == 0 && leftmost_conflicts == 0,
    }
}

pub fn verify_corpus(records: &[CorpusRecord]) -> VerifyReport {
    let results: Vec<RecordResult> = records.par_iter().map(verify_record).collect();
    let keys: Vec<ClassKey> =
        records.par_iter().map(|r| class_key(r.points().points()).expect("grid coordinates are small")).collect();
    let mut groups: BTreeMap<(Family, usize), Vec<&ClassKey>> = BTreeMap::new();
    for (r, k) in records.iter().zip(&keys) {
        groups.entry((r.family, r.n)).or_default().push(k);
    }
    let tallies = groups
        .into_iter()
        .map(|((family, n), mut ks)| {
            let total = ks.len();
            ks.sort();
            ks.dedup();
            let expected = expected_classes(family, n);
            ClassTally {
                family,
                n,
                records: total,
                distinct: ks.len(),
                expected,
                pass: ks.len() == total && expected.is_none_or(|e| e == total),
            }
        })
        .collect();
    VerifyReport { records: results, tallies }
}
