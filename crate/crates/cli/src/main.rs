use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use butterfly_bst::bst::Bst;
use butterfly_bst::butterfly::{
    is_nonsimple_butterfly, is_simple_butterfly, ButterflyShape, ShapeKind,
};
use butterfly_bst::exact::simple_height_counts;
use butterfly_bst::exact::{
    simple_height_pmf, stirling1_pmf, triple_dist_nonsimple, DEFAULT_SUPPORT_CAP,
};
use butterfly_bst::experiments::{
    bounds, clt_simple, clt_simple_exact_ks, explore_conjecture, law_hist, nonsimple_height_sample,
    simple_height_table, wreath_height_diff, Law,
};
use butterfly_bst::gepp::{
    gepp, random_nonsimple_butterfly_matrix, random_simple_butterfly_matrix, uniformity_check,
};
use butterfly_bst::lattice::{adjacency_pattern, degree_multiset};
use butterfly_bst::samplers::{map_trials, RngState, DEFAULT_SEED};
use butterfly_bst::Permutation;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

mod report;

use report::{num, Format, Report, Section};

/// Experiments on binary search trees of butterfly permutations.
#[derive(Parser)]
#[command(name = "butterfly-bst", version)]
struct Cli {
    /// Seed for every random draw; trial i uses stream i.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of trials (each subcommand has its own default).
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Simple,
    Nonsimple,
}

impl From<Family> for ShapeKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Simple => ShapeKind::Simple,
            Family::Nonsimple => ShapeKind::Nonsimple,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PmfLaw {
    /// Height of a uniform simple butterfly tree.
    SimpleHeight,
    /// Height of a uniform nonsimple butterfly tree (exact joint DP).
    NonsimpleHeight,
    /// Cycle count of a uniform permutation of S_n.
    Stirling,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecursionLaw {
    Lis,
    Cycle,
}

#[derive(Subcommand)]
enum Command {
    /// Height counts of all simple butterfly trees, law vs enumeration.
    Table1 {
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Heights of uniform nonsimple butterfly trees (default 10000 trials).
    Fig8 {
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Scaled mean height of S_n wr S_m minus that of S_nm (default 2000 trials).
    #[command(name = "theorem2-diff")]
    WreathHeightDiff {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// KS distance of standardized simple log-heights to |Z| (default 100000 samples).
    CltSimple {
        #[arg(long, default_value_t = 400)]
        n: u32,
    },
    /// Lower bound, exact mean and upper bound of nonsimple mean heights.
    Bounds {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Largest n for which the exact mean is computed.
        #[arg(long, default_value_t = 4)]
        exact_max: u32,
    },
    /// Exploratory heights of S_n wr S_m over a grid (default 500 trials).
    ExploreConjecture {
        /// Comma-separated cells `NxM`.
        #[arg(long, default_value = "50x50,3x100,3x1000,3x10000")]
        grid: String,
    },
    /// GEPP permutations of random butterfly matrices (default 80000 trials).
    GeppCheck {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Family::Nonsimple)]
        family: Family,
    },
    /// Degree multiset of the Boolean lattice comparability graph.
    LatticeDegrees {
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Emit the adjacency coordinate list instead.
        #[arg(long)]
        pattern: bool,
    },
    /// Exact probability mass function export.
    Pmf {
        #[arg(long, value_enum)]
        law: PmfLaw,
        #[arg(long)]
        n: u32,
    },
    /// Histogram of the LIS or cycle recursion law (default 100000 trials).
    LawHist {
        #[arg(long, value_enum)]
        law: RecursionLaw,
        #[arg(long)]
        n: u32,
    },
    /// Tree of a permutation or butterfly shape: key, parent, side, depth.
    Tree {
        /// One-line word such as 3,5,2,4,1,6.
        #[arg(long, conflicts_with_all = ["kind", "shape"])]
        perm: Option<String>,
        #[arg(long, value_enum, requires = "shape")]
        kind: Option<Family>,
        /// Bit string, `0` = 12 and `1` = 21, root or outermost factor first.
        #[arg(long, requires = "kind")]
        shape: Option<String>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let report = run(&cli)?;
    match &cli.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            report.write(cli.format, &mut w)?;
        }
    }
    Ok(())
}

fn big(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.seed;
    let state = RngState::new(seed);
    Ok(match &cli.command {
        Command::Table1 { n } => {
            let rows = simple_height_table(*n)?;
            let mut s = Section::new(
                "counts",
                &["k", "height", "count_law", "count_enumeration", "equal"],
            );
            for r in &rows {
                s.push(vec![
                    json!(r.k),
                    json!(r.height),
                    big(&r.from_pmf),
                    big(&r.from_enumeration),
                    json!(r.matches()),
                ]);
            }
            Report::new("table1", seed).param("n", *n).section(s)
        }
        Command::Fig8 { n } => {
            let trials = cli.trials.unwrap_or(10_000);
            let res = nonsimple_height_sample(*n, trials, state);
            let mut hist = Section::new("histogram", &["height", "count"]);
            for (h, c) in &res.histogram {
                hist.push(vec![json!(h), json!(c)]);
            }
            let m = res.summary;
            let mut summary = Section::new(
                "summary",
                &[
                    "mean",
                    "std_dev",
                    "min",
                    "max",
                    "lower_bound",
                    "upper_bound",
                    "mean_band",
                    "min_limit",
                ],
            );
            let band = if *n == 10 { "[113,126]" } else { "" };
            let limit = if *n == 10 { json!(62) } else { Value::Null };
            summary.push(vec![
                num(m.mean),
                num(m.std_dev),
                num(m.min),
                num(m.max),
                num(res.lower),
                num(res.upper),
                json!(band),
                limit,
            ]);
            Report::new("fig8", seed)
                .param("n", *n)
                .param("trials", trials)
                .section(hist)
                .section(summary)
        }
        Command::WreathHeightDiff { n, m } => {
            let trials = cli.trials.unwrap_or(2000);
            if *n < 2 || *m < 1 {
                bail!("need n >= 2 and m >= 1");
            }
            let d = wreath_height_diff(*n, *m, trials, state);
            let mut s = Section::new(
                "summary",
                &[
                    "wreath_mean",
                    "uniform_mean",
                    "difference",
                    "std_error",
                    "band",
                ],
            );
            s.push(vec![
                num(d.wreath_mean),
                num(d.uniform_mean),
                num(d.difference),
                num(d.std_error),
                json!(if *m == 2 { "[0.6,1.4]" } else { "" }),
            ]);
            Report::new("theorem2-diff", seed)
                .param("n", *n as u64)
                .param("m", *m as u64)
                .param("trials", trials)
                .section(s)
        }
        Command::CltSimple { n } => {
            let samples = cli.trials.unwrap_or(100_000);
            let r = clt_simple(*n, samples, state);
            let mut s = Section::new(
                "summary",
                &[
                    "ks_distance",
                    "ks_distance_exact_law",
                    "ks_h_plus_2",
                    "limit",
                ],
            );
            s.push(vec![
                num(r.ks_distance),
                num(clt_simple_exact_ks(*n)),
                num(r.ks_distance_shifted),
                num(0.05),
            ]);
            Report::new("clt-simple", seed)
                .param("n", *n)
                .param("samples", samples)
                .section(s)
        }
        Command::Bounds { n_max, exact_max } => {
            let mut s = Section::new("bounds", &["n", "lower", "exact", "exact_decimal", "upper"]);
            for r in bounds(*n_max, *exact_max) {
                let (exact, dec) = match &r.exact {
                    Some(q) => (big(q), num(q.to_f64().unwrap_or(f64::NAN))),
                    None => (Value::Null, Value::Null),
                };
                s.push(vec![json!(r.n), num(r.lower), exact, dec, num(r.upper)]);
            }
            Report::new("bounds", seed)
                .param("n_max", *n_max)
                .param("exact_max", *exact_max)
                .section(s)
        }
        Command::ExploreConjecture { grid } => {
            let trials = cli.trials.unwrap_or(500);
            let cells = parse_grid(grid)?;
            let mut s = Section::new(
                "cells",
                &[
                    "n",
                    "m",
                    "height_mean",
                    "ratio_mean",
                    "ratio_defined",
                    "threshold",
                    "exceedance",
                ],
            );
            for r in explore_conjecture(&cells, trials, state) {
                s.push(vec![
                    json!(r.n),
                    json!(r.m),
                    num(r.height_mean),
                    r.ratio_mean.map_or(Value::Null, num),
                    json!(r.ratio_mean.is_some()),
                    num(r.threshold),
                    num(r.exceedance),
                ]);
            }
            Report::new("explore-conjecture", seed)
                .param("grid", grid.as_str())
                .param("trials", trials)
                .param("status", "exploratory")
                .section(s)
        }
        Command::GeppCheck { n, family } => {
            let trials = cli.trials.unwrap_or(80_000);
            let kind: ShapeKind = (*family).into();
            let rep = uniformity_check(*n, trials, state, kind)?;
            let mut counts = Section::new("counts", &["permutation", "count"]);
            for (p, c) in &rep.counts {
                counts.push(vec![json!(p.to_string()), json!(c)]);
            }
            let checked = trials.min(1000);
            let n = *n;
            let worst = map_trials(state, checked, |rng| {
                let m = match kind {
                    ShapeKind::Simple => random_simple_butterfly_matrix(n, rng),
                    ShapeKind::Nonsimple => random_nonsimple_butterfly_matrix(n, rng),
                };
                gepp(&m).map_or(f64::INFINITY, |f| f.reconstruction_error(&m))
            })
            .into_iter()
            .fold(0.0, f64::max);
            let mut summary = Section::new(
                "summary",
                &[
                    "chi_square",
                    "df",
                    "p_value",
                    "p_threshold",
                    "outside_group",
                    "max_reconstruction_error",
                    "reconstruction_checked",
                ],
            );
            summary.push(vec![
                num(rep.chi_square.statistic),
                json!(rep.chi_square.df),
                num(rep.chi_square.p_value),
                num(0.001),
                json!(rep.outside),
                num(worst),
                json!(checked),
            ]);
            Report::new("gepp-check", seed)
                .param("n", n)
                .param("family", kind.to_string())
                .param("trials", trials)
                .section(counts)
                .section(summary)
        }
        Command::LatticeDegrees { n, pattern } => {
            let report = Report::new("lattice-degrees", seed).param("n", *n);
            if *pattern {
                let mut s = Section::new("pattern", &["row", "col"]);
                for (r, c) in adjacency_pattern(*n)? {
                    s.push(vec![json!(r), json!(c)]);
                }
                report.param("pattern", true).section(s)
            } else {
                let degrees = degree_multiset(*n)?;
                let heights = if *n >= 1 {
                    simple_height_counts(*n).ok()
                } else {
                    None
                };
                let mut s = Section::new("degrees", &["degree", "count", "simple_height_count"]);
                for (d, c) in &degrees {
                    let h = heights
                        .as_ref()
                        .and_then(|m| m.get(d))
                        .map_or(Value::Null, big);
                    s.push(vec![json!(d), big(c), h]);
                }
                report.section(s)
            }
        }
        Command::Pmf { law, n } => {
            let mut s = Section::new("pmf", &["value", "numerator", "denominator", "probability"]);
            let name = match law {
                PmfLaw::SimpleHeight => {
                    for (h, p) in simple_height_pmf(*n)? {
                        s.push(vec![
                            json!(h),
                            big(p.numer()),
                            big(p.denom()),
                            num(p.to_f64().unwrap_or(f64::NAN)),
                        ]);
                    }
                    "simple-height"
                }
                PmfLaw::NonsimpleHeight => {
                    let d = triple_dist_nonsimple(*n, DEFAULT_SUPPORT_CAP)?;
                    for (h, w) in d.height_marginal() {
                        let p = num_rational::BigRational::new(
                            w.into(),
                            (num_bigint::BigUint::from(1u32) << d.exponent).into(),
                        );
                        s.push(vec![
                            json!(h),
                            big(p.numer()),
                            big(p.denom()),
                            num(p.to_f64().unwrap_or(f64::NAN)),
                        ]);
                    }
                    "nonsimple-height"
                }
                PmfLaw::Stirling => {
                    for (k, p) in stirling1_pmf(*n as usize)?.into_iter().enumerate() {
                        s.push(vec![
                            json!(k + 1),
                            big(p.numer()),
                            big(p.denom()),
                            num(p.to_f64().unwrap_or(f64::NAN)),
                        ]);
                    }
                    "stirling"
                }
            };
            Report::new("pmf", seed)
                .param("law", name)
                .param("n", *n)
                .section(s)
        }
        Command::LawHist { law, n } => {
            let trials = cli.trials.unwrap_or(100_000);
            let (l, name) = match law {
                RecursionLaw::Lis => (Law::Lis, "lis"),
                RecursionLaw::Cycle => (Law::Cycle, "cycle"),
            };
            if *n > 20 {
                bail!("n = {n} is too large for the recursive sampler (max 20)");
            }
            let h = law_hist(l, *n, trials, state, 4);
            let mut s = Section::new("histogram", &["value", "sampled", "enumerated"]);
            let mut keys: Vec<u64> = h.sampled.keys().copied().collect();
            if let Some(e) = &h.enumerated {
                keys.extend(e.keys().copied());
            }
            keys.sort_unstable();
            keys.dedup();
            for k in keys {
                let e = h
                    .enumerated
                    .as_ref()
                    .map_or(Value::Null, |e| json!(e.get(&k).copied().unwrap_or(0)));
                s.push(vec![
                    json!(k),
                    json!(h.sampled.get(&k).copied().unwrap_or(0)),
                    e,
                ]);
            }
            Report::new("law-hist", seed)
                .param("law", name)
                .param("n", *n)
                .param("trials", trials)
                .section(s)
        }
        Command::Tree { perm, kind, shape } => {
            let (p, label) = match (perm, kind, shape) {
                (Some(w), _, _) => (w.parse::<Permutation>()?, w.clone()),
                (None, Some(k), Some(bits)) => {
                    let shape = ButterflyShape::parse((*k).into(), bits)?;
                    (shape.build(), format!("{}:{bits}", ShapeKind::from(*k)))
                }
                _ => bail!("give --perm or both --kind and --shape"),
            };
            let t = Bst::build(&p);
            let mut nodes = Section::new("nodes", &["key", "parent", "side", "depth"]);
            for key in 1..=p.len() {
                let parent = t.parent(key)?.map_or(Value::Null, |v| json!(v));
                let side = match t.side(key)? {
                    Some(butterfly_bst::bst::Side::Left) => "L",
                    Some(butterfly_bst::bst::Side::Right) => "R",
                    None => "root",
                };
                nodes.push(vec![json!(key), parent, json!(side), json!(t.depth(key)?)]);
            }
            let sm = t.summary();
            let mut summary = Section::new(
                "summary",
                &[
                    "word",
                    "height",
                    "left_edge",
                    "right_edge",
                    "simple",
                    "nonsimple",
                ],
            );
            summary.push(vec![
                json!(p.to_string()),
                json!(sm.height),
                json!(sm.left_edge),
                json!(sm.right_edge),
                json!(is_simple_butterfly(&p)),
                json!(is_nonsimple_butterfly(&p)),
            ]);
            Report::new("tree", seed)
                .param("input", label)
                .section(nodes)
                .section(summary)
        }
    })
}

fn parse_grid(grid: &str) -> Result<Vec<(usize, usize)>> {
    grid.split(',')
        .map(|cell| {
            let (n, m) = cell
                .trim()
                .split_once(['x', 'X'])
                .with_context(|| format!("grid cell {cell:?} is not NxM"))?;
            let n: usize = n
                .trim()
                .parse()
                .with_context(|| format!("bad n in {cell:?}"))?;
            let m: usize = m
                .trim()
                .parse()
                .with_context(|| format!("bad m in {cell:?}"))?;
            if n == 0 || m == 0 {
                bail!("grid cell {cell:?} has a zero size");
            }
            Ok((n, m))
        })
        .collect()
}
