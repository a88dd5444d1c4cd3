use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::ExactError;

/// Largest `n` whose heights `2^n - 1` fit in a `u64`.
pub const MAX_SIMPLE_DEPTH: u32 = 63;

fn check(n: u32) -> Result<(), ExactError> {
    if n == 0 {
        return Err(ExactError::TooSmall { min: 1, found: 0 });
    }
    if n > MAX_SIMPLE_DEPTH {
        return Err(ExactError::TooLarge {
            max: MAX_SIMPLE_DEPTH as u64,
            found: n as u64,
        });
    }
    Ok(())
}

/// Number of simple butterflies of length `2^n` with each tree height.
/// Height `2^k + 2^{n-k} - 2` has count `C(n, k)`, folded over `k ↔ n - k`.
pub fn simple_height_counts(n: u32) -> Result<BTreeMap<u64, BigUint>, ExactError> {
    check(n)?;
    let mut counts = BTreeMap::new();
    let mut binom = BigUint::one();
    for k in 0..=n {
        let h = (1u64 << k) + (1u64 << (n - k)) - 2;
        *counts.entry(h).or_insert_with(BigUint::default) += &binom;
        binom = binom * (n - k) / (k + 1);
    }
    Ok(counts)
}

pub fn simple_height_pmf(n: u32) -> Result<BTreeMap<u64, BigRational>, ExactError> {
    let total = BigInt::from(BigUint::one() << n);
    Ok(simple_height_counts(n)?
        .into_iter()
        .map(|(h, c)| (h, BigRational::new(c.into(), total.clone())))
        .collect())
}

pub fn simple_height_mean(n: u32) -> Result<BigRational, ExactError> {
    Ok(simple_height_pmf(n)?
        .into_iter()
        .map(|(h, p)| p * BigRational::from_integer(h.into()))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bst::summary;
    use crate::butterfly::enumerate_simple;
    use crate::exact::lower_bound_exact;

    fn counts(pairs: &[(u64, u32)]) -> BTreeMap<u64, BigUint> {
        pairs.iter().map(|&(h, c)| (h, BigUint::from(c))).collect()
    }

    #[test]
    fn table_one() {
        assert_eq!(
            simple_height_counts(10).unwrap(),
            counts(&[
                (1023, 2),
                (512, 20),
                (258, 90),
                (134, 240),
                (78, 420),
                (62, 252)
            ])
        );
        assert_eq!(
            simple_height_pmf(10).unwrap()[&62],
            BigRational::new(252.into(), 1024.into())
        );
        assert_eq!(simple_height_counts(2).unwrap(), counts(&[(3, 2), (2, 2)]));
        assert_eq!(simple_height_counts(1).unwrap(), counts(&[(1, 2)]));
    }

    #[test]
    fn means() {
        assert_eq!(
            simple_height_mean(10).unwrap(),
            BigRational::new(116050.into(), 1024.into())
        );
        assert_eq!(simple_height_mean(10).unwrap(), lower_bound_exact(10));
        assert_eq!(simple_height_mean(1).unwrap(), BigRational::one());
        for n in 1..=MAX_SIMPLE_DEPTH {
            assert_eq!(simple_height_mean(n).unwrap(), lower_bound_exact(n));
            let total: BigUint = simple_height_counts(n).unwrap().values().sum();
            assert_eq!(total, BigUint::one() << n);
        }
        assert!(simple_height_counts(0).is_err());
        assert!(simple_height_counts(64).is_err());
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 1..=12 {
            let mut emp: BTreeMap<u64, BigUint> = BTreeMap::new();
            for q in enumerate_simple(n).unwrap() {
                *emp.entry(summary(&q).height as u64).or_default() += 1u32;
            }
            assert_eq!(emp, simple_height_counts(n).unwrap(), "n = {n}");
        }
    }
}
