//! Seeded experiments behind the command-line harness and the acceptance
//! suite. Each returns plain data; formatting lives in the CLI.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::bst::{summary, Bst};
use crate::butterfly::enumerate_simple;
use crate::exact::{
    harmonic, nonsimple_mean_bounds, simple_height_counts, triple_dist_nonsimple, Constants,
    ExactError, DEFAULT_SUPPORT_CAP,
};
use crate::perm::{cycle_count, lis};
use crate::samplers::{
    map_trials, sample_cycle_law, sample_lis_law, sample_nonsimple_butterfly, sample_wreath,
    uniform_permutation, RngState,
};
use crate::stats::{half_normal_cdf, ks_distance, moments, Moments};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightCountRow {
    pub k: u32,
    pub height: u64,
    pub from_pmf: BigUint,
    pub from_enumeration: BigUint,
}

impl HeightCountRow {
    pub fn matches(&self) -> bool {
        self.from_pmf == self.from_enumeration
    }
}

/// Height counts over the simple butterflies of length `2^n`, from the
/// binomial law and from building every tree. One row per
/// `k = 0..=⌊n/2⌋`, height `2^k + 2^{n−k} − 2`.
pub fn simple_height_table(n: u32) -> Result<Vec<HeightCountRow>, ExactError> {
    let law = simple_height_counts(n)?;
    let mut counted: BTreeMap<u64, BigUint> = BTreeMap::new();
    for q in enumerate_simple(n).map_err(|_| ExactError::TooLarge {
        max: 40,
        found: n as u64,
    })? {
        *counted.entry(summary(&q).height as u64).or_default() += 1u32;
    }
    Ok((0..=n / 2)
        .map(|k| {
            let height = (1u64 << k) + (1u64 << (n - k)) - 2;
            HeightCountRow {
                k,
                height,
                from_pmf: law.get(&height).cloned().unwrap_or_default(),
                from_enumeration: counted.get(&height).cloned().unwrap_or_default(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeightSample {
    pub n: u32,
    pub heights: Vec<usize>,
    pub histogram: BTreeMap<usize, u64>,
    pub summary: Moments,
    pub lower: f64,
    pub upper: f64,
}

fn histogram(xs: &[usize]) -> BTreeMap<usize, u64> {
    let mut h = BTreeMap::new();
    for &x in xs {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// Heights of `trials` uniform nonsimple butterfly trees of length `2^n`.
pub fn nonsimple_height_sample(n: u32, trials: u64, state: RngState) -> HeightSample {
    let heights = map_trials(state, trials, |rng| {
        Bst::build(&sample_nonsimple_butterfly(n, rng)).height()
    });
    let as_f64: Vec<f64> = heights.iter().map(|&h| h as f64).collect();
    let (lower, upper) = nonsimple_mean_bounds(n);
    HeightSample {
        n,
        histogram: histogram(&heights),
        summary: moments(&as_f64),
        heights,
        lower,
        upper,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WreathHeightDiff {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    /// `E h(S_n ≀ S_m) / ln(nm)`.
    pub wreath_mean: f64,
    /// `E h(S_{nm}) / ln(nm)`.
    pub uniform_mean: f64,
    pub difference: f64,
    /// Standard error of the paired difference.
    pub std_error: f64,
}

/// Paired comparison of scaled heights: each trial draws one wreath sample
/// and one uniform sample of the same length from its own stream.
pub fn wreath_height_diff(n: usize, m: usize, trials: u64, state: RngState) -> WreathHeightDiff {
    let scale = ((n * m) as f64).ln();
    let pairs = map_trials(state, trials, |rng| {
        let w = Bst::build(&sample_wreath(n, m, rng)).height() as f64 / scale;
        let u = Bst::build(&uniform_permutation(n * m, rng)).height() as f64 / scale;
        (w, u)
    });
    let diffs: Vec<f64> = pairs.iter().map(|(w, u)| w - u).collect();
    let d = moments(&diffs);
    let count = pairs.len() as f64;
    WreathHeightDiff {
        n,
        m,
        trials,
        wreath_mean: pairs.iter().map(|p| p.0).sum::<f64>() / count,
        uniform_mean: pairs.iter().map(|p| p.1).sum::<f64>() / count,
        difference: d.mean,
        std_error: d.std_dev / count.sqrt(),
    }
}

/// `log2(2^a + 2^b − offset)` without overflow, for `offset ∈ {0, 2}`.
fn log2_height(a: u32, b: u32, offset: f64) -> f64 {
    let (hi, lo) = (a.max(b) as f64, a.min(b) as f64);
    hi + (1.0 + (lo - hi).exp2() - offset * (-hi).exp2()).log2()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CltReport {
    pub n: u32,
    pub samples: u64,
    pub ks_distance: f64,
    /// Same statistic with `h + 2 = 2^X + 2^{n−X}` in place of `h`.
    pub ks_distance_shifted: f64,
}

/// Standardized log-heights `(log2 h − n/2)/(√n/2)` of simple butterfly
/// trees, with `X ~ Bin(n, 1/2)` drawn from `n` fair bits, against `|Z|`.
pub fn clt_simple(n: u32, samples: u64, state: RngState) -> CltReport {
    let xs = map_trials(state, samples, |rng| {
        let mut x = 0u32;
        let mut left = n;
        while left > 0 {
            let take = left.min(64);
            let bits: u64 = rng.random();
            let mask = if take == 64 {
                u64::MAX
            } else {
                (1u64 << take) - 1
            };
            x += (bits & mask).count_ones();
            left -= take;
        }
        x
    });
    let half = n as f64 / 2.0;
    let scale = (n as f64).sqrt() / 2.0;
    let stat = |offset: f64| -> Vec<f64> {
        xs.iter()
            .map(|&x| (log2_height(x, n - x, offset) - half) / scale)
            .collect()
    };
    CltReport {
        n,
        samples,
        ks_distance: ks_distance(&stat(2.0), half_normal_cdf),
        ks_distance_shifted: ks_distance(&stat(0.0), half_normal_cdf),
    }
}

/// Exact KS distance between the law of the standardized log-height and
/// `|Z|`, computed from the binomial pmf rather than from samples.
pub fn clt_simple_exact_ks(n: u32) -> f64 {
    let half = n as f64 / 2.0;
    let scale = (n as f64).sqrt() / 2.0;
    // atoms of the statistic with their binomial masses, folded over k ↔ n−k
    let mut atoms: BTreeMap<u32, f64> = BTreeMap::new();
    let log_total = n as f64 * std::f64::consts::LN_2;
    let mut log_binom = 0.0f64;
    for k in 0..=n {
        let p = (log_binom - log_total).exp();
        *atoms.entry(k.min(n - k)).or_insert(0.0) += p;
        if k < n {
            log_binom += ((n - k) as f64).ln() - ((k + 1) as f64).ln();
        }
    }
    // larger k.min(n−k) gives a smaller statistic
    let mut cdf = 0.0;
    let mut worst = 0.0f64;
    for (&k, &p) in atoms.iter().rev() {
        let z = (log2_height(k, n - k, 2.0) - half) / scale;
        let f = half_normal_cdf(z);
        worst = worst.max((f - cdf).abs());
        cdf += p;
        worst = worst.max((cdf - f).abs());
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub n: u32,
    pub lower: f64,
    pub exact: Option<BigRational>,
    pub upper: f64,
}

/// Lower and upper mean-height bounds for `n = 1..=n_max`, with the exact
/// nonsimple mean where `n ≤ exact_max` and the DP fits in its cap.
pub fn bounds(n_max: u32, exact_max: u32) -> Vec<BoundsRow> {
    let top = exact_max.min(n_max);
    let mut exact = Vec::new();
    if top >= 1 {
        if let Ok(mut d) = triple_dist_nonsimple(1, DEFAULT_SUPPORT_CAP) {
            exact.push(d.mean_height());
            while d.level < top {
                match d.next(DEFAULT_SUPPORT_CAP) {
                    Ok(next) => {
                        d = next;
                        exact.push(d.mean_height());
                    }
                    Err(_) => break,
                }
            }
        }
    }
    (1..=n_max)
        .map(|n| {
            let (lower, upper) = nonsimple_mean_bounds(n);
            BoundsRow {
                n,
                lower,
                exact: exact.get(n as usize - 1).cloned(),
                upper,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureRow {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    /// Mean of `h / (ln n · ln m)`; `None` when `n = 1` or `m = 1`.
    pub ratio_mean: Option<f64>,
    /// `c* H_n ln m`.
    pub threshold: f64,
    /// Fraction of trials with `h ≥ threshold`.
    pub exceedance: f64,
    pub height_mean: f64,
}

/// Heights of `S_n ≀ S_m` samples over a grid of `(n, m)`; exploratory.
pub fn explore_conjecture(
    grid: &[(usize, usize)],
    trials: u64,
    state: RngState,
) -> Vec<ConjectureRow> {
    let cstar = Constants::compute().cstar;
    grid.iter()
        .enumerate()
        .map(|(i, &(n, m))| {
            let cell = RngState::with_stream(
                state.seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                0,
            );
            let heights = map_trials(cell, trials, |rng| {
                Bst::build(&sample_wreath(n, m, rng)).height()
            });
            let threshold = cstar * harmonic(n, 1).to_f64().expect("finite") * (m as f64).ln();
            let count = heights.len() as f64;
            let height_mean = heights.iter().sum::<usize>() as f64 / count;
            let denom = (n as f64).ln() * (m as f64).ln();
            ConjectureRow {
                n,
                m,
                trials,
                ratio_mean: (denom > 0.0).then(|| height_mean / denom),
                threshold,
                exceedance: heights.iter().filter(|&&h| h as f64 >= threshold).count() as f64
                    / count,
                height_mean,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Lis,
    Cycle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawHistogram {
    pub law: Law,
    pub n: u32,
    pub sampled: BTreeMap<u64, u64>,
    /// Exact counts over the whole nonsimple group when it was enumerated.
    pub enumerated: Option<BTreeMap<u64, u64>>,
}

/// Histogram of the LIS or cycle recursion law, alongside enumeration over
/// the nonsimple group when `n ≤ enumerate_max` (at most 4).
pub fn law_hist(
    law: Law,
    n: u32,
    trials: u64,
    state: RngState,
    enumerate_max: u32,
) -> LawHistogram {
    let draws = map_trials(state, trials, |rng| match law {
        Law::Lis => sample_lis_law(n, rng),
        Law::Cycle => sample_cycle_law(n, rng),
    });
    let mut sampled = BTreeMap::new();
    for d in draws {
        *sampled.entry(d).or_insert(0) += 1;
    }
    let enumerated = (n >= 1 && n <= enumerate_max.min(4)).then(|| {
        let mut h = BTreeMap::new();
        for q in crate::butterfly::enumerate_nonsimple(n).expect("n <= 4") {
            let v = match law {
                Law::Lis => lis(&q),
                Law::Cycle => cycle_count(&q),
            } as u64;
            *h.entry(v).or_insert(0) += 1;
        }
        h
    });
    LawHistogram {
        law,
        n,
        sampled,
        enumerated,
    }
}
