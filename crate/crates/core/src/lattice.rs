//! Comparability graph of the Boolean lattice on `n` elements.
//!
//! Vertices are subsets encoded as bitmasks in ascending order; two subsets
//! are adjacent when one strictly contains the other. A subset of size `k`
//! has `2^k − 1` proper subsets and `2^{n−k} − 1` proper supersets, so its
//! degree is `2^k + 2^{n−k} − 2`, the simple-butterfly height at `k`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

pub const MAX_DEGREE_N: u32 = 20;
pub const MAX_EXPLICIT_N: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("n = {n} exceeds the cap {cap}")]
    Cap { n: u32, cap: u32 },
}

fn check(n: u32, cap: u32) -> Result<(), LatticeError> {
    if n > cap {
        Err(LatticeError::Cap { n, cap })
    } else {
        Ok(())
    }
}

pub fn subset_degree(n: u32, k: u32) -> u64 {
    (1u64 << k) + (1u64 << (n - k)) - 2
}

/// Degree → number of vertices, from binomial counts.
pub fn degree_multiset(n: u32) -> Result<BTreeMap<u64, BigUint>, LatticeError> {
    check(n, MAX_DEGREE_N)?;
    let mut out = BTreeMap::new();
    let mut binom = BigUint::one();
    for k in 0..=n {
        *out.entry(subset_degree(n, k))
            .or_insert_with(BigUint::default) += &binom;
        binom = binom * (n - k) / (k + 1);
    }
    Ok(out)
}

/// Degree of every vertex by direct comparison of all pairs.
pub fn explicit_degrees(n: u32) -> Result<Vec<u64>, LatticeError> {
    check(n, MAX_EXPLICIT_N)?;
    let size = 1u32 << n;
    Ok((0..size)
        .map(|a| {
            (0..size)
                .filter(|&b| a != b && (a & b == a || a & b == b))
                .count() as u64
        })
        .collect())
}

/// Nonzeros `(row, col)` of the adjacency matrix, 1-based, row-major.
pub fn adjacency_pattern(n: u32) -> Result<Vec<(usize, usize)>, LatticeError> {
    check(n, MAX_EXPLICIT_N)?;
    let size = 1usize << n;
    let mut out = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a != b && (a & b == a || a & b == b) {
                out.push((a + 1, b + 1));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::simple_height_counts;

    fn multiset(pairs: &[(u64, u32)]) -> BTreeMap<u64, BigUint> {
        pairs.iter().map(|&(d, c)| (d, BigUint::from(c))).collect()
    }

    #[test]
    fn small_multisets() {
        assert_eq!(degree_multiset(3).unwrap(), multiset(&[(7, 2), (4, 6)]));
        assert_eq!(degree_multiset(1).unwrap(), multiset(&[(1, 2)]));
        assert_eq!(degree_multiset(0).unwrap(), multiset(&[(0, 1)]));
        assert!(degree_multiset(21).is_err());
    }

    #[test]
    fn matches_simple_height_law() {
        for n in 1..=12 {
            let heights: BTreeMap<u64, BigUint> = simple_height_counts(n).unwrap();
            assert_eq!(degree_multiset(n).unwrap(), heights, "n = {n}");
        }
    }

    #[test]
    fn analytic_matches_explicit() {
        for n in 0..=MAX_EXPLICIT_N {
            let mut emp: BTreeMap<u64, BigUint> = BTreeMap::new();
            for (mask, d) in explicit_degrees(n).unwrap().into_iter().enumerate() {
                assert_eq!(d, subset_degree(n, (mask as u32).count_ones()));
                *emp.entry(d).or_default() += 1u32;
            }
            assert_eq!(emp, degree_multiset(n).unwrap());
        }
        assert!(explicit_degrees(13).is_err());
    }

    #[test]
    fn patterns() {
        assert_eq!(adjacency_pattern(1).unwrap(), vec![(1, 2), (2, 1)]);
        let two = adjacency_pattern(2).unwrap();
        // degrees 3, 2, 2, 3
        assert_eq!(two.len(), 10);
        assert!(!two.contains(&(2, 3)) && !two.contains(&(3, 2)));
        let twelve = adjacency_pattern(12).unwrap();
        let handshake: u64 = explicit_degrees(12).unwrap().iter().sum();
        assert_eq!(twelve.len() as u64, handshake);
        assert!(twelve.iter().all(|&(r, c)| r != c));
        assert!(adjacency_pattern(13).is_err());
    }
}
