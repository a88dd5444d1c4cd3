//! Goodness-of-fit helpers used by the samplers' tests and the experiments.

use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erf;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson chi-square of observed counts against cell probabilities.
///
/// # Panics
/// If the slices differ in length, have fewer than two cells, or a
/// probability is not positive.
pub fn chi_square_test(observed: &[u64], probs: &[f64]) -> ChiSquareReport {
    assert_eq!(observed.len(), probs.len());
    assert!(observed.len() >= 2, "need at least two cells");
    let total: u64 = observed.iter().sum();
    let mass: f64 = probs.iter().sum();
    let statistic = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            assert!(p > 0.0, "cell probability must be positive");
            let e = total as f64 * p / mass;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let df = observed.len() - 1;
    let p_value = ChiSquared::new(df as f64).expect("df >= 1").sf(statistic);
    ChiSquareReport {
        statistic,
        df,
        p_value,
    }
}

/// `P(|Z| ≤ x)` for a standard normal `Z`.
pub fn half_normal_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        erf(x / std::f64::consts::SQRT_2)
    }
}

/// Kolmogorov–Smirnov distance between the empirical law of `samples` and a
/// continuous CDF. Ties are handled, so lattice samples are fine.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Sample mean, standard deviation (n − 1 denominator), min and max.
pub fn moments(xs: &[f64]) -> Moments {
    let count = xs.len();
    let mean = xs.iter().sum::<f64>() / count as f64;
    let var = if count > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64
    } else {
        0.0
    };
    Moments {
        count,
        mean,
        std_dev: var.sqrt(),
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_square_perfect_fit() {
        let r = chi_square_test(&[25, 25, 25, 25], &[0.25; 4]);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.df, 3);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_known_value() {
        // statistic 4 with one degree of freedom: P(Z^2 > 4)
        let r = chi_square_test(&[60, 40], &[0.5, 0.5]);
        assert!((r.statistic - 4.0).abs() < 1e-12);
        assert!((r.p_value - 0.0455).abs() < 1e-3);
    }

    #[test]
    fn half_normal_values() {
        assert_eq!(half_normal_cdf(-1.0), 0.0);
        assert!((half_normal_cdf(1.959964) - 0.95).abs() < 1e-6);
    }

    #[test]
    fn ks_of_point_mass() {
        assert!((ks_distance(&[0.5; 10], |x| x) - 0.5).abs() < 1e-12);
        let grid: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_distance(&grid, |x| x) <= 0.0005 + 1e-12);
    }

    #[test]
    fn moments_basic() {
        let m = moments(&[1.0, 2.0, 3.0]);
        assert_eq!((m.mean, m.std_dev, m.min, m.max), (2.0, 1.0, 1.0, 3.0));
    }
}
