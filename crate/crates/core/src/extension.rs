//! Extension steps, exhaustive enumeration of similarity classes, and the
//! obtainability and decomposition checks built on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, Point};
use crate::similarity::{class_key, pointed_class_key, ClassKey};
use crate::{GridPoint, GridSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("point index {0} out of range")]
    BadIndex(usize),
    #[error("the set is not the neighborhood of the given point")]
    NotANeighborhood,
    #[error("coordinates grew beyond the supported range")]
    Overflow,
}

/// Which extension step an enumeration applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtMode {
    /// 1-extensions from an isosceles right triangle, counting triangles.
    Rit1Ext,
    /// 2-extensions from the unit square, counting squares.
    Square2Ext,
    /// 2-extensions from the unit square through a pinned vertex, counting squares.
    Neighborhood2Ext,
}

impl ExtMode {
    pub fn name(self) -> &'static str {
        match self {
            ExtMode::Rit1Ext => "rit-1ext",
            ExtMode::Square2Ext => "square-2ext",
            ExtMode::Neighborhood2Ext => "neighborhood-2ext",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rit-1ext" => Some(ExtMode::Rit1Ext),
            "square-2ext" => Some(ExtMode::Square2Ext),
            "neighborhood-2ext" => Some(ExtMode::Neighborhood2Ext),
            _ => None,
        }
    }

    fn kind(self) -> Kind {
        match self {
            ExtMode::Rit1Ext => Kind::Rit,
            _ => Kind::Square,
        }
    }

    /// Seed set and, in the pinned mode, the index of the pinned vertex.
    pub fn seed(self) -> (Vec<GridPoint>, Option<usize>) {
        match self {
            ExtMode::Rit1Ext => (vec![Point::new(0, 0), Point::new(0, 1), Point::new(1, 0)], None),
            ExtMode::Square2Ext => (unit_square(), None),
            ExtMode::Neighborhood2Ext => (unit_square(), Some(0)),
        }
    }
}

fn unit_square() -> Vec<GridPoint> {
    vec![Point::new(0, 0), Point::new(0, 1), Point::new(1, 0), Point::new(1, 1)]
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Rit,
    Square,
}

#[inline]
fn rot(p: GridPoint) -> GridPoint {
    Point::new(-p.y, p.x)
}

#[inline]
fn plus(a: GridPoint, b: GridPoint) -> GridPoint {
    Point::new(a.x + b.x, a.y + b.y)
}

#[inline]
fn minus(a: GridPoint, b: GridPoint) -> GridPoint {
    Point::new(a.x - b.x, a.y - b.y)
}

#[inline]
fn even(p: GridPoint) -> bool {
    p.x % 2 == 0 && p.y % 2 == 0
}

#[inline]
fn halve(p: GridPoint) -> GridPoint {
    Point::new(p.x / 2, p.y / 2)
}

/// One child of an extension step, before normalization.
pub(crate) struct RawChild {
    /// Points to add, in doubled coordinates if `doubled`.
    pub new: [GridPoint; 2],
    pub count: usize,
    pub doubled: bool,
}

/// Calls `emit` for every extension step of `pts` (sorted) that adds at least one point.
///
/// With `pin`, square steps are restricted to squares through that point.
pub(crate) fn for_each_step(pts: &[GridPoint], kind: Kind, pin: Option<GridPoint>, mut emit: impl FnMut(RawChild)) {
    let has = |p: &GridPoint| pts.binary_search(p).is_ok();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (p, q) = (pts[i], pts[j]);
            let r = rot(minus(q, p));
            let s = plus(p, q);
            match kind {
                Kind::Rit => {
                    for v in [plus(p, r), plus(q, r), minus(p, r), minus(q, r)] {
                        if !has(&v) {
                            emit(RawChild { new: [v, v], count: 1, doubled: false });
                        }
                    }
                    for v in [plus(s, r), minus(s, r)] {
                        if even(v) {
                            let h = halve(v);
                            if !has(&h) {
                                emit(RawChild { new: [h, h], count: 1, doubled: false });
                            }
                        } else {
                            emit(RawChild { new: [v, v], count: 1, doubled: true });
                        }
                    }
                }
                Kind::Square => {
                    let pinned = |a: GridPoint, b: GridPoint| match pin {
                        None => true,
                        Some(m) => p == m || q == m || a == m || b == m,
                    };
                    let (a, b) = (minus(s, r), plus(s, r));
                    if even(a) {
                        let (a, b) = (halve(a), halve(b));
                        if pinned(a, b) {
                            push_pair(&has, a, b, true, &mut emit);
                        }
                    } else if pin.is_none_or(|m| p == m || q == m) {
                        emit(RawChild { new: [a, b], count: 2, doubled: true });
                    }
                    for (a, b) in [(plus(q, r), plus(p, r)), (minus(q, r), minus(p, r))] {
                        if pinned(a, b) {
                            push_pair(&has, a, b, true, &mut emit);
                        }
                    }
                }
            }
        }
    }
}

/// Emits the points of a square not yet present; adding two points needs `allow_two`.
fn push_pair(
    has: &impl Fn(&GridPoint) -> bool,
    a: GridPoint,
    b: GridPoint,
    allow_two: bool,
    emit: &mut impl FnMut(RawChild),
) {
    match (has(&a), has(&b)) {
        (true, true) => {}
        (false, true) => emit(RawChild { new: [a, a], count: 1, doubled: false }),
        (true, false) => emit(RawChild { new: [b, b], count: 1, doubled: false }),
        (false, false) if allow_two => emit(RawChild { new: [a, b], count: 2, doubled: false }),
        (false, false) => {}
    }
}

/// Builds the child point list: parent plus new points, doubled if needed.
pub(crate) fn materialize(pts: &[GridPoint], c: &RawChild) -> Vec<GridPoint> {
    let mut out = Vec::with_capacity(pts.len() + c.count);
    if c.doubled {
        out.extend(pts.iter().map(|p| Point::new(2 * p.x, 2 * p.y)));
    } else {
        out.extend_from_slice(pts);
    }
    out.extend_from_slice(&c.new[..c.count]);
    out
}

/// Translates to the origin, divides by the content and sorts; returns the map applied to `track`.
pub(crate) fn normalize_in_place(pts: &mut [GridPoint], track: Option<GridPoint>) -> Option<GridPoint> {
    let mx = pts.iter().map(|p| p.x).min().unwrap_or(0);
    let my = pts.iter().map(|p| p.y).min().unwrap_or(0);
    let mut g = 0i64;
    for p in pts.iter() {
        g = gcd(g, p.x - mx);
        g = gcd(g, p.y - my);
    }
    let g = g.max(1);
    for p in pts.iter_mut() {
        *p = Point::new((p.x - mx) / g, (p.y - my) / g);
    }
    pts.sort_unstable();
    track.map(|t| Point::new((t.x - mx) / g, (t.y - my) / g))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Normalized children of one extension step, keyed by similarity class.
fn children(
    pts: &[GridPoint],
    kind: Kind,
    pin: Option<GridPoint>,
    max_len: usize,
) -> Result<Vec<(ClassKey, Rep)>, ExtError> {
    let mut out = Vec::new();
    let mut err = None;
    for_each_step(pts, kind, pin, |c| {
        if pts.len() + c.count > max_len || err.is_some() {
            return;
        }
        let mut child = materialize(pts, &c);
        let pin = pin.map(|m| if c.doubled { Point::new(2 * m.x, 2 * m.y) } else { m });
        let m = normalize_in_place(&mut child, pin);
        match Rep::keyed(child, m) {
            Ok(kr) => out.push(kr),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Class representative: normalized points and the pinned vertex, if any.
#[derive(Clone, Debug)]
struct Rep {
    pts: Box<[GridPoint]>,
    pin: Option<GridPoint>,
}

const COORD_LIMIT: i64 = 1 << 40;

impl Rep {
    fn keyed(pts: Vec<GridPoint>, pin: Option<GridPoint>) -> Result<(ClassKey, Rep), ExtError> {
        if pts.iter().any(|p| p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT) {
            return Err(ExtError::Overflow);
        }
        let key = match pin {
            None => class_key(&pts),
            Some(m) => {
                let idx = pts.binary_search(&m).map_err(|_| ExtError::Overflow)?;
                pointed_class_key(&pts, idx)
            }
        }
        .map_err(|_| ExtError::Overflow)?;
        Ok((key, Rep { pts: pts.into_boxed_slice(), pin }))
    }

    fn set(&self) -> GridSet {
        GridSet::new(self.pts.to_vec())
    }
}

fn normalized_children(set: &GridSet, kind: Kind) -> Vec<GridSet> {
    let mut seen: FxHashMap<ClassKey, GridSet> = FxHashMap::default();
    let mut order = Vec::new();
    for (k, rep) in children(set.points(), kind, None, usize::MAX).expect("coordinates within range") {
        if !seen.contains_key(&k) {
            order.push(k.clone());
            seen.insert(k, rep.set());
        }
    }
    order.into_iter().map(|k| seen.remove(&k).expect("present")).collect()
}

/// All 1-extensions of a lattice set, one per similarity class, content-normalized.
pub fn one_extensions(set: &GridSet) -> Vec<GridSet> {
    normalized_children(set, Kind::Rit)
}

/// All 2-extensions adding at least one point, one per similarity class, content-normalized.
pub fn two_extensions(set: &GridSet) -> Vec<GridSet> {
    normalized_children(set, Kind::Square)
}

/// Class count and, in the pinned mode, the largest degree of the pinned vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub classes: u64,
    pub delta_max: usize,
}

/// Keep only classes whose count reaches a per-size threshold; absent sizes keep everything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumFilter {
    pub min_count: BTreeMap<usize, u64>,
}

impl EnumFilter {
    fn keeps(&self, n: usize, m: u64) -> bool {
        self.min_count.get(&n).is_none_or(|&t| m >= t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    pub mode: ExtMode,
    pub n_max: usize,
    /// Stop before expanding a level with more classes than this.
    pub max_classes: Option<usize>,
    pub filter: EnumFilter,
}

impl EnumConfig {
    pub fn new(mode: ExtMode, n_max: usize) -> Self {
        EnumConfig { mode, n_max, max_classes: None, filter: EnumFilter::default() }
    }
}

/// Per-size class counts indexed by the squares or triangles count `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumTable {
    pub mode: ExtMode,
    pub n_max: usize,
    pub cells: BTreeMap<usize, BTreeMap<u64, Cell>>,
    /// A representative with the largest count per size.
    pub best: BTreeMap<usize, (u64, GridSet)>,
    /// Set when the class budget stopped the run early.
    pub partial: Option<usize>,
}

impl EnumTable {
    pub fn cell(&self, n: usize, m: u64) -> Cell {
        self.cells.get(&n).and_then(|r| r.get(&m)).copied().unwrap_or_default()
    }

    pub fn classes_at(&self, n: usize) -> u64 {
        self.cells.get(&n).map(|r| r.values().map(|c| c.classes).sum()).unwrap_or(0)
    }

    /// Tab-separated `n, m, classes` rows (plus `delta_max` in the pinned mode), zero cells
    /// filled in between the smallest and largest `m` of each size.
    pub fn to_tsv(&self) -> String {
        let pinned = self.mode == ExtMode::Neighborhood2Ext;
        let mut out = String::from(if pinned { "n\tm\tclasses\tdelta_max\n" } else { "n\tm\tclasses\n" });
        for (n, row) in &self.cells {
            let (Some(lo), Some(hi)) = (row.keys().next(), row.keys().next_back()) else {
                continue;
            };
            for m in *lo..=*hi {
                let c = row.get(&m).copied().unwrap_or_default();
                if pinned {
                    let _ = writeln!(out, "{n}\t{m}\t{}\t{}", c.classes, c.delta_max);
                } else {
                    let _ = writeln!(out, "{n}\t{m}\t{}", c.classes);
                }
            }
        }
        if let Some(n) = self.partial {
            let _ = writeln!(out, "# partial: class budget exhausted at n={n}");
        }
        out
    }
}

fn measure(mode: ExtMode, rep: &Rep) -> (u64, usize) {
    let set = rep.set();
    match mode {
        ExtMode::Rit1Ext => (set.rit_count(), 0),
        ExtMode::Square2Ext => (set.square_count(), 0),
        ExtMode::Neighborhood2Ext => {
            let m = rep.pin.expect("pinned mode keeps a pin");
            let rest = GridSet::new(set.iter().copied().filter(|p| *p != m).collect());
            let deg = geometry::count_squares_through(&rest, &m).expect("coordinates within range");
            (set.square_count(), deg as usize)
        }
    }
}

const CHUNK: usize = 2048;

/// Exhaustive level-by-level enumeration of similarity classes.
pub fn enumerate(cfg: &EnumConfig) -> Result<EnumTable, ExtError> {
    enumerate_with(cfg, |_, _, _| {})
}

/// Like [`enumerate`], also handing every kept class to `visit` as `(m, points, pin)`.
pub fn enumerate_with(
    cfg: &EnumConfig,
    mut visit: impl FnMut(u64, &[GridPoint], Option<GridPoint>),
) -> Result<EnumTable, ExtError> {
    let mode = cfg.mode;
    let kind = mode.kind();
    let (seed, pin_idx) = mode.seed();
    let seed_pin = pin_idx.map(|i| seed[i]);
    let mut levels: BTreeMap<usize, FxHashMap<ClassKey, Rep>> = BTreeMap::new();
    let (k, r) = Rep::keyed(seed.clone(), seed_pin)?;
    levels.entry(seed.len()).or_default().insert(k, r);
    let mut table = EnumTable {
        mode,
        n_max: cfg.n_max,
        cells: BTreeMap::new(),
        best: BTreeMap::new(),
        partial: None,
    };
    for n in seed.len()..=cfg.n_max {
        let Some(level) = levels.remove(&n) else {
            continue;
        };
        let mut reps: Vec<(ClassKey, Rep)> = level.into_iter().collect();
        reps.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let measured: Vec<(u64, usize)> = reps.par_iter().map(|(_, r)| measure(mode, r)).collect();
        let mut kept = Vec::with_capacity(reps.len());
        let row = table.cells.entry(n).or_default();
        for ((_, rep), (m, deg)) in reps.into_iter().zip(measured) {
            if !cfg.filter.keeps(n, m) {
                continue;
            }
            let cell = row.entry(m).or_default();
            cell.classes += 1;
            cell.delta_max = cell.delta_max.max(deg);
            visit(m, &rep.pts, rep.pin);
            match table.best.get(&n) {
                Some((bm, _)) if *bm >= m => {}
                _ => {
                    table.best.insert(n, (m, rep.set()));
                }
            }
            kept.push(rep);
        }
        if n == cfg.n_max {
            break;
        }
        if cfg.max_classes.is_some_and(|b| kept.len() > b) {
            table.partial = Some(n);
            break;
        }
        for chunk in kept.chunks(CHUNK) {
            let produced: Vec<Vec<(ClassKey, Rep)>> = chunk
                .par_iter()
                .map(|rep| children(&rep.pts, kind, rep.pin, cfg.n_max))
                .collect::<Result<_, _>>()?;
            for (key, rep) in produced.into_iter().flatten() {
                levels.entry(rep.pts.len()).or_default().entry(key).or_insert(rep);
            }
        }
    }
    Ok(table)
}

fn monotone_closure(n: usize, groups: &[Vec<usize>], seed: &[usize], need: usize) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &s in seed {
        inside[s] = true;
    }
    loop {
        let mut changed = false;
        for g in groups {
            let k = g.iter().filter(|&&v| inside[v]).count();
            if k >= need && k < g.len() {
                for &v in g {
                    inside[v] = true;
                }
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

fn rit_groups(set: &GridSet) -> Vec<Vec<usize>> {
    geometry::rits(set).expect("coordinates within range").into_iter().map(|t| t.to_vec()).collect()
}

fn square_groups(set: &GridSet) -> Vec<Vec<usize>> {
    geometry::squares(set).expect("coordinates within range").into_iter().map(|s| s.to_vec()).collect()
}

fn best_closure(set: &GridSet, groups: &[Vec<usize>], need: usize) -> Option<GridSet> {
    let mut best: Option<Vec<usize>> = None;
    for g in groups {
        let inside = monotone_closure(set.len(), groups, g, need);
        let idx: Vec<usize> = (0..set.len()).filter(|&i| inside[i]).collect();
        if best.as_ref().is_none_or(|b| idx.len() > b.len()) {
            let full = idx.len() == set.len();
            best = Some(idx);
            if full {
                break;
            }
        }
    }
    best.map(|b| set.subset(&b))
}

/// Closure of a seed triangle under 1-extension inside `set`; indices into `set`.
pub fn closure_1ext(set: &GridSet, seed: [usize; 3]) -> Vec<usize> {
    let inside = monotone_closure(set.len(), &rit_groups(set), &seed, 2);
    (0..set.len()).filter(|&i| inside[i]).collect()
}

/// Closure of a seed square under 2-extension inside `set`; indices into `set`.
pub fn closure_2ext(set: &GridSet, seed: [usize; 4]) -> Vec<usize> {
    let inside = monotone_closure(set.len(), &square_groups(set), &seed, 2);
    (0..set.len()).filter(|&i| inside[i]).collect()
}

/// Largest subset obtainable by recursive 1-extension from one of the set's triangles.
pub fn maximal_1ext_subconfig(set: &GridSet) -> Option<GridSet> {
    best_closure(set, &rit_groups(set), 2)
}

pub fn is_1ext_obtainable(set: &GridSet) -> bool {
    maximal_1ext_subconfig(set).is_some_and(|s| s.len() == set.len())
}

/// Largest subset obtainable by recursive 2-extension from one of the set's squares.
pub fn maximal_2ext_subconfig(set: &GridSet) -> Option<GridSet> {
    best_closure(set, &square_groups(set), 2)
}

pub fn is_2ext_obtainable(set: &GridSet) -> bool {
    maximal_2ext_subconfig(set).is_some_and(|s| s.len() == set.len())
}

/// Indices of `p` and of all vertices of squares through `p`.
pub fn neighborhood(set: &GridSet, p: usize) -> Result<Vec<usize>, ExtError> {
    if p >= set.len() {
        return Err(ExtError::BadIndex(p));
    }
    let mut inside = vec![false; set.len()];
    inside[p] = true;
    for s in square_groups(set) {
        if s.contains(&p) {
            for v in s {
                inside[v] = true;
            }
        }
    }
    Ok((0..set.len()).filter(|&i| inside[i]).collect())
}

/// Graph on the neighbors of a root; `x, y` are adjacent when `root, x, y` lie on a common square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodGraph {
    pub root: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl NeighborhoodGraph {
    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, v)).collect();
        let find = |label: &BTreeMap<usize, usize>, mut v: usize| {
            while label[&v] != v {
                v = label[&v];
            }
            v
        };
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&label, a), find(&label, b));
            label.insert(ra.max(rb), ra.min(rb));
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &self.vertices {
            comps.entry(find(&label, v)).or_default().push(v);
        }
        comps.into_values().collect()
    }
}

pub fn neighborhood_graph(set: &GridSet, root: usize) -> Result<NeighborhoodGraph, ExtError> {
    let nb = neighborhood(set, root)?;
    let mut edges = Vec::new();
    for s in square_groups(set) {
        if let Some(pos) = s.iter().position(|&v| v == root) {
            let others: Vec<usize> = (1..4).map(|k| s[(pos + k) % 4]).collect();
            for (a, b) in [(others[0], others[1]), (others[0], others[2]), (others[1], others[2])] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(NeighborhoodGraph { root, vertices: nb.into_iter().filter(|&v| v != root).collect(), edges })
}

/// Decomposition of a neighborhood at its root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub root: usize,
    /// Root plus one connected component of the neighborhood graph each.
    pub components: Vec<Vec<usize>>,
    /// Components merged until every square meets every part in 0, 1 or 4 vertices.
    pub parts: Vec<Vec<usize>>,
    /// Whether every merged part is 2-extension obtainable.
    pub maximal: bool,
}

/// Whether the parts meet pairwise exactly in the root and every square through the root lies in one part.
pub fn is_decomposition(set: &GridSet, root: usize, parts: &[Vec<usize>]) -> bool {
    for (i, a) in parts.iter().enumerate() {
        if !a.contains(&root) {
            return false;
        }
        for b in &parts[i + 1..] {
            if a.iter().any(|v| *v != root && b.contains(v)) {
                return false;
            }
        }
    }
    square_groups(set)
        .iter()
        .filter(|s| s.contains(&root))
        .all(|s| parts.iter().any(|p| s.iter().all(|v| p.contains(v))))
}

/// The 2-extension maximality conditions for a decomposition.
pub fn is_2ext_maximal_decomposition(set: &GridSet, root: usize, parts: &[Vec<usize>]) -> bool {
    if !is_decomposition(set, root, parts) {
        return false;
    }
    let squares = square_groups(set);
    let meets_ok = squares
        .iter()
        .all(|s| parts.iter().all(|p| matches!(s.iter().filter(|v| p.contains(v)).count(), 0 | 1 | 4)));
    meets_ok && parts.iter().all(|p| is_2ext_obtainable(&set.subset(p)))
}

/// Decomposes a set that equals the neighborhood of `root`.
pub fn decompose_at(set: &GridSet, root: usize) -> Result<Decomposition, ExtError> {
    if neighborhood(set, root)?.len() != set.len() {
        return Err(ExtError::NotANeighborhood);
    }
    let graph = neighborhood_graph(set, root)?;
    let components: Vec<Vec<usize>> = graph
        .components()
        .into_iter()
        .map(|mut c| {
            c.push(root);
            c.sort_unstable();
            c
        })
        .collect();
    let mut part_of: Vec<usize> = vec![usize::MAX; set.len()];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            if v != root {
                part_of[v] = i;
            }
        }
    }
    let squares = square_groups(set);
    loop {
        let mut merged = false;
        for s in &squares {
            let owners: Vec<usize> = s.iter().filter(|&&v| v != root).map(|&v| part_of[v]).collect();
            for &o in &owners {
                let k = s.iter().filter(|&&v| v == root || part_of[v] == o).count();
                if k == 2 || k == 3 {
                    let target = *owners.iter().min().expect("nonempty");
                    for v in part_of.iter_mut() {
                        if owners.contains(v) {
                            *v = target;
                        }
                    }
                    merged = true;
                    break;
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &o) in part_of.iter().enumerate() {
        if v != root {
            groups.entry(o).or_default().push(v);
        }
    }
    let parts: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut g| {
            g.push(root);
            g.sort_unstable();
            g
        })
        .collect();
    let maximal = is_2ext_maximal_decomposition(set, root, &parts);
    Ok(Decomposition { root, components, parts, maximal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(c: &[(i64, i64)]) -> GridSet {
        GridSet::from_coords(c)
    }

    #[test]
    fn triangle_has_six_children_in_few_classes() {
        let t = set(&[(0, 0), (1, 0), (0, 1)]);
        let kids = one_extensions(&t);
        assert!(kids.iter().all(|k| k.len() == 4));
        let counts: Vec<u64> = kids.iter().map(|k| k.rit_count()).collect();
        assert!(counts.contains(&4));
    }

    #[test]
    fn unit_square_two_extensions_grow() {
        let s = set(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let kids = two_extensions(&s);
        assert!(kids.iter().all(|k| k.len() == 6));
        assert_eq!(kids.len(), 2);
    }

    #[test]
    fn glued_triangles_are_not_obtainable() {
        let s = set(&[(0, 0), (1, 0), (0, 1), (-3, -1), (-1, 3)]);
        assert_eq!(s.rit_count(), 2);
        assert!(!is_1ext_obtainable(&s));
        assert_eq!(maximal_1ext_subconfig(&s).unwrap().len(), 3);
    }

    #[test]
    fn three_squares_on_a_pair() {
        let s = set(&[(2, 0), (2, 2), (0, 0), (0, 2), (4, 0), (4, 2), (1, 1), (3, 1)]);
        assert_eq!(s.square_count(), 3);
        assert!(is_2ext_obtainable(&s));
    }

    #[test]
    fn single_square_decomposes_into_itself() {
        let s = set(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let d = decompose_at(&s, 0).unwrap();
        assert_eq!(d.parts, vec![vec![0, 1, 2, 3]]);
        assert!(d.maximal);
    }

    #[test]
    fn non_neighborhood_is_rejected() {
        let s = set(&[(0, 0), (1, 0), (0, 1), (1, 1), (5, 5)]);
        assert_eq!(decompose_at(&s, 0), Err(ExtError::NotANeighborhood));
        assert_eq!(neighborhood(&s, 9), Err(ExtError::BadIndex(9)));
    }

    #[test]
    fn small_rit_table() {
        let t = enumerate(&EnumConfig::new(ExtMode::Rit1Ext, 5)).unwrap();
        assert_eq!(t.cell(3, 1).classes, 1);
        assert_eq!(t.cell(4, 2).classes, 2);
        assert_eq!(t.cell(4, 3).classes, 1);
        assert_eq!(t.cell(4, 4).classes, 1);
        assert_eq!(t.cell(5, 3).classes, 16);
        assert_eq!(t.cell(5, 8).classes, 1);
    }

    #[test]
    fn tsv_fills_zero_cells() {
        let t = enumerate(&EnumConfig::new(ExtMode::Rit1Ext, 5)).unwrap();
        assert!(t.to_tsv().contains("5\t7\t0\n"));
        assert!(t.to_tsv().starts_with("n\tm\tclasses\n"));
    }
}

