use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{lambda_pow, Constants};

/// `2(3/2)^n − 2`, the mean simple-butterfly height and a lower bound on the
/// nonsimple mean height.
pub fn lower_bound_exact(n: u32) -> BigRational {
    lambda_pow(n) * BigRational::from_integer(2.into()) - BigRational::from_integer(2.into())
}

/// `(ξ^n − λ^n)/(ξ − λ)`, summed as `Σ_{k<n} ξ^k λ^{n-1-k}` to avoid
/// cancellation.
pub fn upper_bound(n: u32) -> f64 {
    let xi = Constants::compute().xi;
    (0..n)
        .map(|k| xi.powi(k as i32) * 1.5f64.powi((n - 1 - k) as i32))
        .sum()
}

pub fn nonsimple_mean_bounds(n: u32) -> (f64, f64) {
    (
        lower_bound_exact(n).to_f64().expect("finite"),
        upper_bound(n),
    )
}

/// The sequences `a_n`, `b_n` with `a_0 = b_0 = 0` and
///
/// ```text
/// a_{n+1} = λ^n + a_n + √(2 b_n)/2
/// b_{n+1} = b_n + (13/12) λ^{2n} + λ^n + (λ^n + 1) a_n / 2 + √(1/3) λ^n √(b_n + a_n²)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSequences {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

pub fn bound_sequences(n_max: usize) -> BoundSequences {
    let mut a = vec![0.0f64];
    let mut b = vec![0.0f64];
    for n in 0..n_max {
        let l = 1.5f64.powi(n as i32);
        let (an, bn) = (a[n], b[n]);
        a.push(l + an + 0.5 * (2.0 * bn).sqrt());
        b.push(
            bn + 13.0 / 12.0 * l * l
                + l
                + 0.5 * (l + 1.0) * an
                + (1.0f64 / 3.0).sqrt() * l * (bn + an * an).sqrt(),
        );
    }
    BoundSequences { a, b }
}

impl BoundSequences {
    /// Indices `n ≥ 1` where `b_n > c · a_n²`.
    pub fn violations(&self, c: f64) -> Vec<usize> {
        (1..self.a.len())
            .filter(|&n| self.b[n] > c * self.a[n] * self.a[n])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_bounds_at_ten() {
        let (lo, hi) = nonsimple_mean_bounds(10);
        assert_eq!(format!("{lo:.2}"), "113.33");
        assert_eq!(format!("{hi:.2}"), "1313.53");
        assert_eq!(
            lower_bound_exact(10),
            BigRational::new(116050.into(), 1024.into())
        );
    }

    #[test]
    fn small_bounds() {
        assert_eq!(nonsimple_mean_bounds(0), (0.0, 0.0));
        assert_eq!(nonsimple_mean_bounds(1), (1.0, 1.0));
        let k = Constants::compute();
        let (lo, hi) = nonsimple_mean_bounds(2);
        assert_eq!(lo, 2.5);
        assert!((hi - (k.xi + 1.5)).abs() < 1e-12);
        for n in 0..=60 {
            let (lo, hi) = nonsimple_mean_bounds(n);
            assert!(lo <= hi + 1e-9 * hi, "n = {n}");
            let closed = (k.xi.powi(n as i32) - 1.5f64.powi(n as i32)) / (k.xi - 1.5);
            assert!((hi - closed).abs() <= 1e-9 * closed.max(1.0));
        }
    }

    #[test]
    fn sequence_values() {
        let s = bound_sequences(60);
        assert_eq!((s.a[0], s.b[0]), (0.0, 0.0));
        assert_eq!(s.a[1], 1.0);
        assert!((s.b[1] - 25.0 / 12.0).abs() < 1e-15);
        assert!(s.a.windows(2).all(|w| w[0] <= w[1]));
        assert!(s.b.windows(2).all(|w| w[0] <= w[1]));
        // the closed-form bound inherits the failure of b_1 <= C* a_1^2 at n = 2
        let above: Vec<usize> = (0..=60)
            .filter(|&n| s.a[n] > upper_bound(n as u32) * (1.0 + 1e-12) + 1e-12)
            .collect();
        assert_eq!(above, vec![2]);
    }

    #[test]
    fn quadratic_domination_fails_only_at_one() {
        // The displayed recursion gives a_1 = 1, so b_1 = 25/12 exceeds C* a_1².
        let s = bound_sequences(60);
        let c = Constants::compute().big_c;
        assert_eq!(s.violations(c), vec![1]);
    }
}
