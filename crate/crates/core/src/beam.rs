//! Truncated best-first extension: keep the highest scoring classes per size.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::extension::{for_each_step, materialize, normalize_in_place, Kind, RawChild};
use crate::geometry::Point;
use crate::similarity::{class_key, ClassKey};
use crate::{GridPoint, GridSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BeamMode {
    Rit,
    Square,
}

impl BeamMode {
    pub fn name(self) -> &'static str {
        match self {
            BeamMode::Rit => "rit",
            BeamMode::Square => "square",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rit" => Some(BeamMode::Rit),
            "square" => Some(BeamMode::Square),
            _ => None,
        }
    }

    fn kind(self) -> Kind {
        match self {
            BeamMode::Rit => Kind::Rit,
            BeamMode::Square => Kind::Square,
        }
    }

    fn seed(self) -> Vec<GridPoint> {
        let mut s = vec![Point::new(0, 0), Point::new(0, 1), Point::new(1, 0)];
        if self == BeamMode::Square {
            s.push(Point::new(1, 1));
        }
        s.sort_unstable();
        s
    }

    /// Largest number of points a single step adds.
    fn max_step(self) -> usize {
        match self {
            BeamMode::Rit => 1,
            BeamMode::Square => 2,
        }
    }
}

pub const DEFAULT_WIDTH: usize = 30000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeamConfig {
    pub mode: BeamMode,
    pub width: usize,
    pub n_target: usize,
}

impl BeamConfig {
    pub fn new(mode: BeamMode, width: usize, n_target: usize) -> Self {
        assert!(width >= 1, "beam width must be positive");
        BeamConfig { mode, width, n_target }
    }
}

/// Bookkeeping for one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelLog {
    pub n: usize,
    /// Extension steps scored, before deduplication.
    pub generated: u64,
    /// Steps that were keyed because they scored at or above the cutoff.
    pub keyed: u64,
    pub cutoff: u64,
    pub kept: usize,
    pub best: u64,
    /// No extension reached this size; the witness is the previous one plus a far point.
    pub padded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeamResult {
    pub config: BeamConfig,
    pub best: BTreeMap<usize, u64>,
    pub witnesses: BTreeMap<usize, GridSet>,
    pub log: Vec<LevelLog>,
}

impl BeamResult {
    /// Tab-separated `n, best, witness` rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tbest\twitness\n");
        for (n, b) in &self.best {
            out.push_str(&format!("{n}\t{b}\tbeam-{}-{n}\n", self.config.mode.name()));
        }
        out
    }
}

#[inline]
fn rot(p: GridPoint) -> GridPoint {
    Point::new(-p.y, p.x)
}

/// Number of isosceles right triangles through `p` whose other vertices satisfy `has`.
fn rits_through(p: GridPoint, others: &[GridPoint], has: &impl Fn(GridPoint) -> bool) -> u64 {
    let mut twice = 0u64;
    for &q in others {
        let r = rot(Point::new(q.x - p.x, q.y - p.y));
        for v in [
            Point::new(p.x + r.x, p.y + r.y),
            Point::new(q.x + r.x, q.y + r.y),
            Point::new(p.x - r.x, p.y - r.y),
            Point::new(q.x - r.x, q.y - r.y),
        ] {
            twice += has(v) as u64;
        }
        for (sx, sy) in [(p.x + q.x + r.x, p.y + q.y + r.y), (p.x + q.x - r.x, p.y + q.y - r.y)] {
            if sx % 2 == 0 && sy % 2 == 0 {
                twice += has(Point::new(sx / 2, sy / 2)) as u64;
            }
        }
    }
    twice / 2
}

/// Number of squares through `p` whose other vertices satisfy `has`.
fn squares_through(p: GridPoint, others: &[GridPoint], has: &impl Fn(GridPoint) -> bool) -> u64 {
    let mut n = 0u64;
    for &q in others {
        let (sx, sy) = (p.x + q.x, p.y + q.y);
        let r = rot(Point::new(q.x - p.x, q.y - p.y));
        let (ax, ay, bx, by) = (sx - r.x, sy - r.y, sx + r.x, sy + r.y);
        if ax % 2 == 0 && ay % 2 == 0 && has(Point::new(ax / 2, ay / 2)) && has(Point::new(bx / 2, by / 2)) {
            n += 1;
        }
    }
    n
}

struct Parent {
    pts: Box<[GridPoint]>,
    score: u64,
}

/// Distinct steps of one parent with their scores.
fn scored_steps(mode: BeamMode, parent: &Parent, step: usize) -> Vec<(u64, RawChild)> {
    let mut steps: Vec<RawChild> = Vec::new();
    for_each_step(&parent.pts, mode.kind(), None, |c| {
        if c.count == step {
            steps.push(c);
        }
    });
    let canon = |c: &RawChild| {
        let mut k = c.new;
        if c.count == 2 && k[1] < k[0] {
            k.swap(0, 1);
        }
        (c.doubled, k)
    };
    steps.sort_unstable_by_key(canon);
    steps.dedup_by_key(|c| canon(c));
    let doubled: Vec<GridPoint> = if steps.iter().any(|c| c.doubled) {
        parent.pts.iter().map(|p| Point::new(2 * p.x, 2 * p.y)).collect()
    } else {
        Vec::new()
    };
    steps
        .into_iter()
        .map(|c| {
            let base: &[GridPoint] = if c.doubled { &doubled } else { &parent.pts };
            let has = |v: GridPoint| base.binary_search(&v).is_ok();
            let inc = match (mode, c.count) {
                (BeamMode::Rit, _) => rits_through(c.new[0], base, &has),
                (BeamMode::Square, 1) => squares_through(c.new[0], base, &has),
                (BeamMode::Square, _) => {
                    let (a, b) = (c.new[0], c.new[1]);
                    let has_b = |v: GridPoint| v == b || has(v);
                    let mut with_b = base.to_vec();
                    with_b.push(b);
                    squares_through(a, &with_b, &has_b) + squares_through(b, base, &has)
                }
            };
            (parent.score + inc, c)
        })
        .collect()
}

fn keyed_child(parent: &Parent, c: &RawChild) -> (ClassKey, Box<[GridPoint]>) {
    let mut pts = materialize(&parent.pts, c);
    normalize_in_place(&mut pts, None);
    let key = class_key(&pts).expect("beam coordinates stay small");
    (key, pts.into_boxed_slice())
}

/// One level: children of `sources` (each with the number of points its steps must add).
fn next_level(mode: BeamMode, width: usize, sources: &[(&[Parent], usize)], n: usize) -> (Vec<Parent>, LevelLog) {
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for &(parents, step) in sources {
        let h: Vec<BTreeMap<u64, u64>> = parents
            .par_iter()
            .map(|p| {
                let mut h = BTreeMap::new();
                for (s, _) in scored_steps(mode, p, step) {
                    *h.entry(s).or_insert(0) += 1;
                }
                h
            })
            .collect();
        for part in h {
            for (s, c) in part {
                *hist.entry(s).or_insert(0) += c;
            }
        }
    }
    let generated: u64 = hist.values().sum();
    let mut log = LevelLog { n, generated, keyed: 0, cutoff: 0, kept: 0, best: 0, padded: false };
    if generated == 0 {
        return (Vec::new(), log);
    }
    let scores: Vec<u64> = hist.keys().rev().copied().collect();
    let mut pool: Vec<(u64, ClassKey, Box<[GridPoint]>)> = Vec::new();
    let mut seen: FxHashSet<ClassKey> = FxHashSet::default();
    let mut upper = u64::MAX;
    let mut i = 0;
    while i < scores.len() {
        // lower the cutoff until the raw count in [cutoff, upper) covers what is missing
        let need = (width - seen.len().min(width)) as u64;
        let mut raw = 0u64;
        let mut cutoff = scores[i];
        while i < scores.len() {
            cutoff = scores[i];
            raw += hist[&cutoff];
            i += 1;
            if raw >= need {
                break;
            }
        }
        for &(parents, step) in sources {
            let found: Vec<Vec<(u64, ClassKey, Box<[GridPoint]>)>> = parents
                .par_iter()
                .map(|p| {
                    scored_steps(mode, p, step)
                        .into_iter()
                        .filter(|(s, _)| *s >= cutoff && *s < upper)
                        .map(|(s, c)| {
                            let (k, pts) = keyed_child(p, &c);
                            (s, k, pts)
                        })
                        .collect()
                })
                .collect();
            for (s, k, pts) in found.into_iter().flatten() {
                log.keyed += 1;
                if seen.insert(k.clone()) {
                    pool.push((s, k, pts));
                }
            }
        }
        log.cutoff = cutoff;
        upper = cutoff;
        if seen.len() >= width {
            break;
        }
    }
    pool.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    pool.truncate(width);
    log.kept = pool.len();
    log.best = pool.first().map_or(0, |p| p.0);
    (pool.into_iter().map(|(score, _, pts)| Parent { pts, score }).collect(), log)
}

fn count(mode: BeamMode, pts: &[GridPoint]) -> u64 {
    let set = GridSet::new(pts.to_vec());
    match mode {
        BeamMode::Rit => set.rit_count(),
        BeamMode::Square => set.square_count(),
    }
}

/// Witness of the previous size plus a point far from everything.
fn pad(prev: &GridSet) -> GridSet {
    let far = prev.iter().map(|p| p.x.abs().max(p.y.abs())).max().unwrap_or(0) * 4 + 7;
    let mut pts = prev.points().to_vec();
    pts.push(Point::new(far, far + 3));
    let mut pts = pts;
    normalize_in_place(&mut pts, None);
    GridSet::new(pts)
}

/// Runs the beam from the seed up to `n_target` points.
pub fn beam_search(cfg: &BeamConfig) -> BeamResult {
    let mode = cfg.mode;
    let seed = mode.seed();
    let n0 = seed.len();
    let seed_score = count(mode, &seed);
    let mut levels: BTreeMap<usize, Vec<Parent>> = BTreeMap::new();
    levels.insert(n0, vec![Parent { pts: seed.clone().into_boxed_slice(), score: seed_score }]);
    let mut result = BeamResult { config: cfg.clone(), best: BTreeMap::new(), witnesses: BTreeMap::new(), log: Vec::new() };
    result.best.insert(n0, seed_score);
    result.witnesses.insert(n0, GridSet::new(seed));
    result.log.push(LevelLog {
        n: n0,
        generated: 1,
        keyed: 1,
        cutoff: seed_score,
        kept: 1,
        best: seed_score,
        padded: false,
    });
    for n in n0 + 1..=cfg.n_target {
        let sources: Vec<(&[Parent], usize)> = (1..=mode.max_step())
            .filter_map(|step| levels.get(&(n - step)).map(|ps| (ps.as_slice(), step)))
            .collect();
        let (kept, mut log) = next_level(mode, cfg.width, &sources, n);
        let prev_best = result.best[&(n - 1)];
        if kept.is_empty() || log.best < prev_best {
            let w = pad(&result.witnesses[&(n - 1)]);
            log.padded = true;
            log.best = prev_best;
            result.best.insert(n, prev_best);
            result.witnesses.insert(n, w);
        } else {
            result.best.insert(n, log.best);
            result.witnesses.insert(n, GridSet::new(kept[0].pts.to_vec()));
        }
        result.log.push(log);
        levels.insert(n, kept);
        levels.retain(|&k, _| k + mode.max_step() > n);
    }
    result
}
