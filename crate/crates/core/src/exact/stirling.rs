use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Rows `|s(j, k)|` for `0 ≤ k ≤ j ≤ n`, built by
/// `|s(j+1, k)| = j |s(j, k)| + |s(j, k-1)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(n: usize) -> Self {
        let mut rows = vec![vec![BigUint::one()]];
        for j in 0..n {
            let prev = &rows[j];
            let next = (0..=j + 1)
                .map(|k| {
                    let stay = if k <= j {
                        &prev[k] * j
                    } else {
                        BigUint::zero()
                    };
                    let step = if k >= 1 {
                        prev[k - 1].clone()
                    } else {
                        BigUint::zero()
                    };
                    stay + step
                })
                .collect();
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, j: usize) -> Option<&[BigUint]> {
        self.rows.get(j).map(Vec::as_slice)
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(j)?.get(k)
    }
}

pub fn stirling1_unsigned(n: usize, k: usize) -> Result<BigUint, ExactError> {
    if k > n {
        return Err(ExactError::KExceedsN { n, k });
    }
    Ok(StirlingTable::new(n).rows.swap_remove(n).swap_remove(k))
}

/// `P(Υ_n = k) = |s(n, k)| / n!` for `k = 1..=n`, the law of the number of
/// cycles (equivalently left-to-right maxima) of a uniform permutation.
pub fn stirling1_pmf(n: usize) -> Result<Vec<BigRational>, ExactError> {
    if n == 0 {
        return Err(ExactError::TooSmall { min: 1, found: 0 });
    }
    let table = StirlingTable::new(n);
    let total = factorial(n);
    Ok(table.rows[n][1..]
        .iter()
        .map(|c| BigRational::new(c.clone().into(), total.clone().into()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::harmonic;
    use crate::perm::{all_permutations, cycle_count, ltr_maxima_len};

    fn r(a: u64, b: u64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(stirling1_unsigned(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(stirling1_unsigned(0, 0).unwrap(), BigUint::one());
        for n in 0..12 {
            assert_eq!(stirling1_unsigned(n, n).unwrap(), BigUint::one());
        }
        assert_eq!(stirling1_unsigned(5, 1).unwrap(), factorial(4));
        assert_eq!(
            stirling1_unsigned(2, 3),
            Err(ExactError::KExceedsN { n: 2, k: 3 })
        );
    }

    #[test]
    fn row_sums_are_factorials() {
        let t = StirlingTable::new(30);
        assert_eq!(t.n(), 30);
        for n in 0..=30 {
            let sum: BigUint = t.row(n).unwrap().iter().sum();
            assert_eq!(sum, factorial(n));
            if n >= 1 {
                assert!(t.get(n, 0).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(stirling1_pmf(3).unwrap(), vec![r(2, 6), r(3, 6), r(1, 6)]);
        assert_eq!(stirling1_pmf(1).unwrap(), vec![r(1, 1)]);
        let mean: BigRational = stirling1_pmf(3)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(i, p)| p * BigRational::from_integer((i as i64 + 1).into()))
            .sum();
        assert_eq!(mean, r(11, 6));
        assert!(stirling1_pmf(0).is_err());
    }

    #[test]
    fn pmf_matches_enumeration() {
        for n in 1..=7 {
            let mut records = vec![0u64; n + 1];
            let mut cycles = vec![0u64; n + 1];
            for p in all_permutations(n) {
                records[ltr_maxima_len(&p)] += 1;
                cycles[cycle_count(&p)] += 1;
            }
            let total = factorial(n);
            let pmf = stirling1_pmf(n).unwrap();
            for k in 1..=n {
                let emp = BigRational::new(records[k].into(), total.clone().into());
                assert_eq!(emp, pmf[k - 1]);
                assert_eq!(records[k], cycles[k]);
            }
            let mean: BigRational = pmf
                .iter()
                .enumerate()
                .map(|(i, p)| p * BigRational::from_integer((i as i64 + 1).into()))
                .sum();
            assert_eq!(mean, harmonic(n, 1));
            let second: BigRational = pmf
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    p * BigRational::from_integer(((i as i64 + 1) * (i as i64 + 1)).into())
                })
                .sum();
            assert_eq!(&second - &mean * &mean, harmonic(n, 1) - harmonic(n, 2));
        }
    }
}
