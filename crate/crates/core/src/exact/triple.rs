use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;
use crate::butterfly::{combine_nonsimple, S2};

pub const DEFAULT_SUPPORT_CAP: usize = 5_000_000;

/// `(H, L, R)`: height, left edge, right edge.
pub type Triple = (usize, usize, usize);

/// Law of `(H_n, L_n, R_n)` for a uniform nonsimple butterfly tree of length
/// `2^n`: `P(t) = weights[t] / 2^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleDistribution {
    pub level: u32,
    pub weights: BTreeMap<Triple, BigUint>,
    pub exponent: u32,
}

impl TripleDistribution {
    pub fn base() -> Self {
        let mut weights = BTreeMap::new();
        weights.insert((1, 0, 1), BigUint::one());
        weights.insert((1, 1, 0), BigUint::one());
        TripleDistribution {
            level: 1,
            weights,
            exponent: 1,
        }
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> BigUint {
        self.weights.values().sum()
    }

    fn denominator(&self) -> BigInt {
        BigInt::from(BigUint::one() << self.exponent)
    }

    pub fn probability(&self, t: Triple) -> BigRational {
        let w = self.weights.get(&t).cloned().unwrap_or_default();
        BigRational::new(w.into(), self.denominator())
    }

    fn marginal(&self, f: impl Fn(&Triple) -> usize) -> BTreeMap<usize, BigUint> {
        let mut out = BTreeMap::new();
        for (t, w) in &self.weights {
            *out.entry(f(t)).or_insert_with(BigUint::zero) += w;
        }
        out
    }

    pub fn height_marginal(&self) -> BTreeMap<usize, BigUint> {
        self.marginal(|t| t.0)
    }

    pub fn left_marginal(&self) -> BTreeMap<usize, BigUint> {
        self.marginal(|t| t.1)
    }

    pub fn right_marginal(&self) -> BTreeMap<usize, BigUint> {
        self.marginal(|t| t.2)
    }

    /// `E f(H, L, R)` exactly.
    pub fn expectation(&self, f: impl Fn(&Triple) -> usize) -> BigRational {
        let num: BigUint = self.weights.iter().map(|(t, w)| w * f(t)).sum();
        BigRational::new(num.into(), self.denominator())
    }

    pub fn mean_height(&self) -> BigRational {
        self.expectation(|t| t.0)
    }

    /// Law at the next level: two independent copies combined by a fair
    /// choice at the new root.
    ///
    /// A `12` root reads only `(H, R)` of the second half and a `21` root
    /// only `(H, L)`, so the second copy is marginalized first.
    pub fn next(&self, cap: usize) -> Result<Self, ExactError> {
        let level = self.level + 1;
        let mut by_hr: HashMap<(usize, usize), BigUint> = HashMap::new();
        let mut by_hl: HashMap<(usize, usize), BigUint> = HashMap::new();
        for (&(h, l, r), w) in &self.weights {
            *by_hr.entry((h, r)).or_default() += w;
            *by_hl.entry((h, l)).or_default() += w;
        }
        let mut out: HashMap<Triple, BigUint> = HashMap::new();
        for (&first, w1) in &self.weights {
            for (&(h2, r2), w2) in &by_hr {
                let t = combine_nonsimple(S2::Keep, first, (h2, 0, r2));
                *out.entry(t).or_default() += w1 * w2;
            }
            for (&(h2, l2), w2) in &by_hl {
                let t = combine_nonsimple(S2::Swap, first, (h2, l2, 0));
                *out.entry(t).or_default() += w1 * w2;
            }
            if out.len() > cap {
                return Err(ExactError::SupportCap {
                    level,
                    support: out.len(),
                    cap,
                });
            }
        }
        Ok(TripleDistribution {
            level,
            weights: out.into_iter().collect(),
            exponent: 2 * self.exponent + 1,
        })
    }
}

/// Exact joint law at level `n`, failing once any level's support exceeds
/// `support_cap`.
pub fn triple_dist_nonsimple(n: u32, support_cap: usize) -> Result<TripleDistribution, ExactError> {
    if n == 0 {
        return Err(ExactError::TooSmall { min: 1, found: 0 });
    }
    let mut d = TripleDistribution::base();
    while d.level < n {
        d = d.next(support_cap)?;
    }
    Ok(d)
}

pub fn exact_mean_height(n: u32) -> Result<BigRational, ExactError> {
    Ok(triple_dist_nonsimple(n, DEFAULT_SUPPORT_CAP)?.mean_height())
}

/// Smallest height of any nonsimple butterfly tree of length `2^n`.
///
/// The recursion is nondecreasing in every coordinate, so only the
/// Pareto-minimal `(H, L, R)` triples of each level can lead to the minimum.
pub fn min_nonsimple_height(n: u32) -> Result<usize, ExactError> {
    if n == 0 {
        return Err(ExactError::TooSmall { min: 1, found: 0 });
    }
    let mut front: Vec<Triple> = vec![(1, 0, 1), (1, 1, 0)];
    for _ in 1..n {
        let mut next: Vec<Triple> = Vec::new();
        for c in [S2::Keep, S2::Swap] {
            for &a in &front {
                for &b in &front {
                    next.push(combine_nonsimple(c, a, b));
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        let mut kept: Vec<Triple> = Vec::new();
        for t in next {
            if !kept.iter().any(|k| k.0 <= t.0 && k.1 <= t.1 && k.2 <= t.2) {
                kept.push(t);
            }
        }
        front = kept;
    }
    Ok(front.iter().map(|t| t.0).min().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bst::summary;
    use crate::butterfly::enumerate_nonsimple;
    use crate::exact::{edge_moments, lower_bound_exact, upper_bound};
    use num_traits::ToPrimitive;

    #[test]
    fn base_level() {
        let d = triple_dist_nonsimple(1, 10).unwrap();
        assert_eq!(d, TripleDistribution::base());
        assert_eq!(
            d.probability((1, 0, 1)),
            BigRational::new(1.into(), 2.into())
        );
        assert!(triple_dist_nonsimple(0, 10).is_err());
    }

    #[test]
    fn level_two_mean() {
        assert_eq!(
            exact_mean_height(2).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
    }

    #[test]
    fn matches_enumeration() {
        for n in 1..=4 {
            let d = triple_dist_nonsimple(n, DEFAULT_SUPPORT_CAP).unwrap();
            let mut emp: BTreeMap<Triple, BigUint> = BTreeMap::new();
            for q in enumerate_nonsimple(n).unwrap() {
                *emp.entry(summary(&q).triple()).or_default() += 1u32;
            }
            // 2^(2^n - 1) elements against denominator 2^(2^n - 1)
            assert_eq!(d.exponent, (1 << n) - 1);
            assert_eq!(d.weights, emp, "n = {n}");
        }
    }

    #[test]
    fn invariants_and_moments() {
        for n in 1..=6 {
            let d = triple_dist_nonsimple(n, DEFAULT_SUPPORT_CAP).unwrap();
            assert_eq!(d.total_weight(), BigUint::one() << d.exponent);
            for &(h, l, r) in d.weights.keys() {
                assert!(h >= l.max(r) && h < 1 << n);
            }
            let (m, s) = edge_moments(n);
            assert_eq!(d.expectation(|t| t.1), m);
            assert_eq!(d.expectation(|t| t.2), m);
            assert_eq!(d.expectation(|t| t.1 * t.1), s);
            assert_eq!(d.expectation(|t| t.2 * t.2), s);
            assert_eq!(d.left_marginal(), d.right_marginal());
            let mean = d.mean_height();
            assert!(mean >= lower_bound_exact(n));
            assert!(mean.to_f64().unwrap() <= upper_bound(n));
        }
    }

    #[test]
    fn minimum_height() {
        for n in 1..=4 {
            let d = triple_dist_nonsimple(n, DEFAULT_SUPPORT_CAP).unwrap();
            let min = *d.height_marginal().keys().next().unwrap();
            assert_eq!(min_nonsimple_height(n).unwrap(), min, "n = {n}");
        }
        // far below the simple-butterfly minimum of 62 at n = 10
        assert_eq!(min_nonsimple_height(10).unwrap(), 20);
    }

    #[test]
    fn cap_is_reported() {
        match triple_dist_nonsimple(4, 20) {
            Err(ExactError::SupportCap {
                level,
                support,
                cap: 20,
            }) => {
                assert!(level >= 2 && support > 20)
            }
            other => panic!("expected a cap error, got {other:?}"),
        }
    }
}
