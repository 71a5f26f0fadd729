use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use squares_core::beam::{beam_search, BeamConfig, BeamMode, DEFAULT_WIDTH};
use squares_core::bounds::{self, bound_report, Family};
use squares_core::corpus::{parse_corpus, render_grid, verify_corpus, SHIPPED};
use squares_core::extension::{enumerate, EnumConfig, ExtMode};
use squares_core::geometry::{count_axis_parallel_squares, srit_minus_3sq};
use squares_core::ilp::{ilp_export, Variant};
use squares_core::oss::{is_realizable, OrientedSquareSet};
use squares_core::similarity::{canonical_key_of_set, class_key, normalize_to_grid};
use squares_core::{GridSet, Point};

#[derive(Parser)]
#[command(name = "squares", version, about = "Point sets with many squares or isosceles right triangles")]
struct Cli {
    /// Structured JSON output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumeration and beam search.
    #[arg(long, global = true, env = "SQUARES_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count squares, triangles, axis-parallel squares and triangles minus three squares.
    Count {
        /// Grid text or `x,y` lines; `-` or omitted reads stdin.
        input: Option<PathBuf>,
    },
    /// Print the canonical similarity key and the canonical grid.
    Canon { input: Option<PathBuf> },
    /// Enumerate similarity classes by recursive extension.
    Enum {
        #[arg(long, value_parser = parse_ext_mode)]
        mode: ExtMode,
        #[arg(long)]
        n_max: usize,
        /// Stop before a level with more classes than this.
        #[arg(long)]
        max_classes: Option<usize>,
    },
    /// Beam search for lower bounds.
    Beam {
        #[arg(long, value_parser = parse_beam_mode)]
        mode: BeamMode,
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: usize,
        #[arg(long)]
        n: usize,
        /// Also print the witness grids.
        #[arg(long)]
        witnesses: bool,
    },
    /// Decide realizability of an oriented square set file.
    Realize { input: Option<PathBuf> },
    /// Upper and lower bounds for n points.
    Bounds {
        #[arg(long)]
        n: usize,
    },
    /// Write the triangle bound program as an LP file.
    Ilp {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "base", value_parser = parse_variant)]
        variant: Variant,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify every record of the corpus.
    CorpusVerify {
        /// Corpus file to use instead of the shipped one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Render coordinates as grid text.
    Render { input: Option<PathBuf> },
}

fn parse_ext_mode(s: &str) -> Result<ExtMode, String> {
    ExtMode::parse(s).ok_or_else(|| format!("unknown mode {s:?}; use rit-1ext, square-2ext or neighborhood-2ext"))
}

fn parse_beam_mode(s: &str) -> Result<BeamMode, String> {
    BeamMode::parse(s).ok_or_else(|| format!("unknown mode {s:?}; use rit or square"))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::parse(s).ok_or_else(|| format!("unknown variant {s:?}; use base, mod8 or mod9"))
}

/// Input problems exit with 2, like usage errors.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| input_err(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

/// Grid rows over `x`/`.` (one per line, or separated by `/`), or one `x,y` point per line.
fn parse_points(text: &str) -> Result<GridSet> {
    let lines: Vec<&str> =
        text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(input_err("no points in input"));
    }
    let is_grid = lines.iter().all(|l| l.chars().all(|c| matches!(c, 'x' | '.' | '/')));
    let mut pts = Vec::new();
    if is_grid {
        let rows: Vec<&str> = lines.iter().flat_map(|l| l.split('/')).filter(|r| !r.is_empty()).collect();
        for (r, row) in rows.iter().enumerate() {
            for (c, ch) in row.chars().enumerate() {
                if ch == 'x' {
                    pts.push(Point::new(c as i64, -(r as i64)));
                }
            }
        }
    } else {
        for (i, l) in lines.iter().enumerate() {
            let nums: Vec<i64> = l
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| input_err(format!("line {}: expected `x,y`, got {l:?}", i + 1)))?;
            if nums.len() != 2 {
                return Err(input_err(format!("line {}: expected `x,y`, got {l:?}", i + 1)));
            }
            pts.push(Point::new(nums[0], nums[1]));
        }
    }
    let n = pts.len();
    let set = GridSet::new(pts);
    if set.len() != n {
        return Err(input_err("repeated points in input"));
    }
    Ok(set)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Count { input } => {
            let set = parse_points(&read_input(input.as_deref())?)?;
            let squares = set.square_count();
            let rit = set.rit_count();
            let axis = count_axis_parallel_squares(&set).map_err(|e| anyhow!("{e}"))?;
            let mixed = srit_minus_3sq(&set).map_err(|e| anyhow!("{e}"))?;
            if json {
                print_json(&json!({"n": set.len(), "squares": squares, "rit": rit, "axis": axis, "rit_minus_3sq": mixed}));
            } else {
                println!("n={}\nsquares={squares}\nrit={rit}\naxis={axis}\nrit_minus_3sq={mixed}", set.len());
            }
        }
        Command::Canon { input } => {
            let set = parse_points(&read_input(input.as_deref())?)?;
            let key = canonical_key_of_set(&set);
            let fast = class_key(set.points()).map_err(|e| anyhow!("{e}"))?;
            let grid = normalize_to_grid(&key.decode()).map_err(|e| anyhow!("{e}"))?;
            let rows = render_grid(&grid);
            if json {
                print_json(&json!({"key": key.to_string(), "class_key": fast.as_slice(), "grid": rows}));
            } else {
                println!("key={key}");
                println!("class_key={}", fast.as_slice().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                for r in rows {
                    println!("{r}");
                }
            }
        }
        Command::Enum { mode, n_max, max_classes } => {
            let mut cfg = EnumConfig::new(mode, n_max);
            cfg.max_classes = max_classes;
            let t = Instant::now();
            let table = enumerate(&cfg).map_err(|e| anyhow!("{e}"))?;
            eprintln!("enumerated {} up to n={n_max} in {:.1?}", mode.name(), t.elapsed());
            if json {
                print_json(&to_value(&table));
            } else {
                print!("{}", table.to_tsv());
            }
        }
        Command::Beam { mode, width, n, witnesses } => {
            if width == 0 {
                return Err(input_err("--width must be positive"));
            }
            let t = Instant::now();
            let result = beam_search(&BeamConfig::new(mode, width, n));
            eprintln!("beam {} width {width} to n={n} in {:.1?}", mode.name(), t.elapsed());
            if json {
                print_json(&to_value(&result));
            } else {
                print!("{}", result.to_tsv());
                if witnesses {
                    for (k, w) in &result.witnesses {
                        println!("\nbeam-{}-{k}", mode.name());
                        for r in render_grid(w) {
                            println!("{r}");
                        }
                    }
                }
            }
        }
        Command::Realize { input } => {
            let oss = OrientedSquareSet::parse(&read_input(input.as_deref())?).map_err(|e| input_err(e.to_string()))?;
            let report = is_realizable(&oss).map_err(|e| anyhow!("{e}"))?;
            if json {
                print_json(&to_value(&report));
            } else {
                println!("realizable={}", report.realizable);
                match report.dimension {
                    Some(d) => println!("dimension={d}"),
                    None => println!("dimension=none"),
                }
                println!("free_dimension={}", report.free_dimension);
                if let Some((a, b)) = report.certificate {
                    println!("certificate={a},{b}");
                }
                for class in &report.merged {
                    println!("merged={}", class.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                }
                if let Some(grid) = &report.grid {
                    for (i, p) in grid.iter().enumerate() {
                        println!("point {}={},{}", i + 1, p.x, p.y);
                    }
                }
            }
        }
        Command::Bounds { n } => {
            let rit = bound_report(Family::Rit, n);
            let square = bound_report(Family::Square, n);
            let code = bounds::a_n_6_4(n).ok();
            let mixed = bounds::mixed_square_upper_default(n).ok();
            if json {
                print_json(&json!({"rit": rit, "square": square, "a_n_6_4": code, "mixed_square": mixed}));
            } else {
                for r in [&rit, &square] {
                    let fam = r.family.name();
                    for (k, v) in &r.upper {
                        println!("{fam}.{k}={v}");
                    }
                    let show = |v: Option<u64>| v.map_or("none".to_string(), |v| v.to_string());
                    println!("{fam}.best_upper={}", show(r.best_upper));
                    println!("{fam}.best_lower={}", show(r.best_lower));
                }
                if let Some(v) = code {
                    println!("a_n_6_4={v}");
                }
                if let Some(v) = mixed {
                    println!("mixed_square={v}");
                }
            }
        }
        Command::Ilp { n, variant, out } => {
            let lp = ilp_export(n, variant).map_err(|e| input_err(e.to_string()))?;
            match out {
                Some(p) => std::fs::write(&p, lp).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{lp}"),
            }
        }
        Command::CorpusVerify { corpus } => {
            let text = match corpus {
                Some(p) => read_input(Some(&p))?,
                None => SHIPPED.to_string(),
            };
            let records = parse_corpus(&text).map_err(|e| input_err(e.to_string()))?;
            let report = verify_corpus(&records);
            if json {
                print_json(&json!({"passed": report.passed(), "report": report}));
            } else {
                for r in &report.records {
                    println!(
                        "{}\t{}\t{}\t{}\t{}",
                        if r.pass { "ok" } else { "FAIL" },
                        r.id,
                        r.family.name(),
                        r.expected,
                        r.computed
                    );
                }
                for f in report.failures() {
                    eprintln!("mismatch: {f}");
                }
                println!(
                    "records={} failed={}",
                    report.records.len(),
                    report.records.iter().filter(|r| !r.pass).count()
                );
                println!("tallies={} failed={}", report.tallies.len(), report.tallies.iter().filter(|t| !t.pass).count());
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render { input } => {
            let set = parse_points(&read_input(input.as_deref())?)?;
            let rows = render_grid(&set);
            if json {
                print_json(&json!({"grid": rows}));
            } else {
                for r in rows {
                    println!("{r}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
