use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lambda_pow;

/// Generalized harmonic number `H_n^{(order)} = Σ_{j ≤ n} j^{-order}`.
pub fn harmonic(n: usize, order: u32) -> BigRational {
    (1..=n)
        .map(|j| BigRational::new(BigInt::one(), BigInt::from(j).pow(order)))
        .sum()
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 1..=k {
        let next = &row[j - 1] * BigInt::from(k + 1 - j) / BigInt::from(j);
        row.push(next);
    }
    row
}

fn moment_sequence(k_max: usize, denominator: impl Fn(u32) -> BigRational) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut m = vec![BigRational::one(), BigRational::one()];
    for k in 2..=k_max {
        let c = binomial_row(k);
        let sum: BigRational = (1..k)
            .map(|j| BigRational::from_integer(c[j].clone()) * &m[j] * &m[k - j])
            .sum();
        m.push(&half / denominator(k as u32) * sum);
    }
    m.truncate(k_max + 1);
    m
}

/// `m_k` from the recursion
/// `m_k = (λ - 1)/(λ^k - 1) Σ_{j=1}^{k-1} C(k, j) m_j m_{k-j}` with
/// `m_0 = m_1 = 1`, exactly as printed for the limit of `C/N^α`.
///
/// This sequence does not match the limit law: see [`cycle_limit_moment`].
pub fn cycle_moment(k: usize) -> BigRational {
    moment_sequence(k, |k| lambda_pow(k) - BigRational::one())[k].clone()
}

/// `E W^k` for `W = lim C(π_n)/λ^n`.
///
/// Taking `k`-th moments of `λW = W + ηW'` gives
/// `m_k = (λ - 1)/(λ^k - λ) Σ_{j=1}^{k-1} C(k, j) m_j m_{k-j}`, so
/// `m_2 = 4/3`, consistent with `E L_n^2 / λ^{2n} → 4/3`.
pub fn cycle_limit_moment(k: usize) -> BigRational {
    let lambda = BigRational::new(BigInt::from(3), BigInt::from(2));
    moment_sequence(k, |k| lambda_pow(k) - &lambda)[k].clone()
}

/// Exact `E Y_n^k` for `k = 0..=k_max`, where `Y_0 = 1` and
/// `Y_{n+1} = Y_n + η Y_n'`.
pub fn cycle_law_moments(n: u32, k_max: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rows: Vec<Vec<BigInt>> = (0..=k_max).map(binomial_row).collect();
    let mut m = vec![BigRational::one(); k_max + 1];
    for _ in 0..n {
        let next = (0..=k_max)
            .map(|k| {
                let cross: BigRational = (1..=k)
                    .map(|j| BigRational::from_integer(rows[k][j].clone()) * &m[k - j] * &m[j])
                    .sum();
                &m[k] + &half * cross
            })
            .collect();
        m = next;
    }
    m
}

/// `(E L_n, E L_n^2)` for the left (or right) edge length of a uniform
/// nonsimple butterfly tree of length `2^n`.
pub fn edge_moments(n: u32) -> (BigRational, BigRational) {
    let third = |a: i64| BigRational::new(BigInt::from(a), BigInt::from(3));
    let l = lambda_pow(n);
    let mean = &l - BigRational::one();
    let second = third(4) * &l * &l - third(7) * &l + BigRational::one();
    (mean, second)
}

/// Harmonic numbers and moment sequences up to fixed orders.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub harmonic1: Vec<BigRational>,
    pub harmonic2: Vec<BigRational>,
    /// The printed recursion, see [`cycle_moment`].
    pub cycle_moments: Vec<BigRational>,
    pub limit_moments: Vec<BigRational>,
    pub lambda: BigRational,
}

impl MomentTable {
    pub fn new(n_max: usize, k_max: usize) -> Self {
        let running = |order: u32| {
            let mut acc = BigRational::zero();
            let mut out = vec![acc.clone()];
            for j in 1..=n_max {
                acc += BigRational::new(BigInt::one(), BigInt::from(j).pow(order));
                out.push(acc.clone());
            }
            out
        };
        MomentTable {
            harmonic1: running(1),
            harmonic2: running(2),
            cycle_moments: moment_sequence(k_max, |k| lambda_pow(k) - BigRational::one()),
            limit_moments: moment_sequence(k_max, |k| {
                lambda_pow(k) - BigRational::new(BigInt::from(3), BigInt::from(2))
            }),
            lambda: BigRational::new(BigInt::from(3), BigInt::from(2)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bst::summary;
    use crate::butterfly::enumerate_nonsimple;
    use crate::perm::cycle_count;
    use num_traits::ToPrimitive;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(3, 1), r(11, 6));
        assert_eq!(harmonic(2, 2), r(5, 4));
        assert_eq!(harmonic(0, 1), r(0, 1));
        let t = MomentTable::new(10, 4);
        assert!(t.harmonic1.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(t.harmonic2[2], r(5, 4));
        assert_eq!(t.lambda, r(3, 2));
    }

    #[test]
    fn printed_cycle_moments() {
        assert_eq!(cycle_moment(0), r(1, 1));
        assert_eq!(cycle_moment(1), r(1, 1));
        assert_eq!(cycle_moment(2), r(4, 5));
        // (1/2)/(19/8) * (3 m_1 m_2 + 3 m_2 m_1)
        assert_eq!(cycle_moment(3), r(4, 19) * r(24, 5));
    }

    #[test]
    fn limit_moments_match_the_law() {
        assert_eq!(cycle_limit_moment(2), r(4, 3));
        let n = 120;
        let exact = cycle_law_moments(n, 4);
        for k in 0..=4u32 {
            let scaled = &exact[k as usize] / lambda_pow(n).pow(k as i32);
            let m = cycle_limit_moment(k as usize);
            assert!((scaled - &m).to_f64().unwrap().abs() < 1e-12, "k = {k}");
        }
        assert!(
            (cycle_moment(2) - cycle_limit_moment(2))
                .to_f64()
                .unwrap()
                .abs()
                > 0.5
        );
    }

    #[test]
    fn edge_moment_values() {
        assert_eq!(edge_moments(1), (r(1, 2), r(1, 2)));
        assert_eq!(edge_moments(2), (r(5, 4), r(5, 2)));
        let (m, s) = edge_moments(7);
        let y = cycle_law_moments(7, 2);
        assert_eq!(m, &y[1] - r(1, 1));
        assert_eq!(s, &y[2] - r(2, 1) * &y[1] + r(1, 1));
    }

    #[test]
    fn moments_match_enumeration() {
        for n in 1..=4u32 {
            let mut count = 0i64;
            let (mut sl, mut sl2, mut sr, mut sr2) = (0i64, 0i64, 0i64, 0i64);
            let mut c = [0i64; 4];
            for q in enumerate_nonsimple(n).unwrap() {
                let t = summary(&q);
                let (l, rr) = (t.left_edge as i64, t.right_edge as i64);
                sl += l;
                sl2 += l * l;
                sr += rr;
                sr2 += rr * rr;
                let y = cycle_count(&q) as i64;
                for (k, ck) in c.iter_mut().enumerate() {
                    *ck += y.pow(k as u32);
                }
                count += 1;
            }
            let (m, s) = edge_moments(n);
            assert_eq!(r(sl, count), m);
            assert_eq!(r(sr, count), m);
            assert_eq!(r(sl2, count), s);
            assert_eq!(r(sr2, count), s);
            let y = cycle_law_moments(n, 3);
            for k in 0..4 {
                assert_eq!(r(c[k], count), y[k], "n = {n}, k = {k}");
            }
        }
    }
}
