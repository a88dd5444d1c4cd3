//! Permutations in one-line notation and the block products used to build
//! butterfly permutations.
//!
//! A [`Permutation`] of length `n` stores the word `(σ(1), ..., σ(n))` with
//! 1-based values. Its permutation matrix `P_σ` maps `e_j` to `e_{σ(j)}`, so
//! column `j` carries a single 1 in row `σ(j)`. All products below are given
//! by explicit position formulas that agree with the matching matrix
//! identities (`P_{a⊗b} = P_a ⊗ P_b`, block diagonal for `⊕`, anti-block
//! diagonal for `⊖`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation must have length at least 1")]
    Empty,
    #[error("word is not a bijection of 1..={len}: {reason}")]
    NotBijection { len: usize, reason: String },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("block {index} has size {found}, expected {expected}")]
    BlockSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} blocks, got {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A bijection of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Validates a 1-based word.
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        let n = word.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n {
                return Err(PermError::NotBijection {
                    len: n,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::NotBijection {
                    len: n,
                    reason: format!("value {v} repeated"),
                });
            }
        }
        Ok(Permutation { word })
    }

    /// Internal constructor for words already known to be valid.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        Ok(Permutation {
            word: (1..=n).collect(),
        })
    }

    /// Relabels a sequence of distinct values to `1..=k`, keeping their
    /// relative order. `standardize(&[6, 5]) == 21`.
    pub fn standardize(values: &[usize]) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::Empty);
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut word = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            word[i] = rank + 1;
        }
        Permutation::new(word)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    /// `σ(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.word[j - 1]
    }

    /// Position (1-based) of every value: `positions()[v - 1] = σ⁻¹(v)`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (j, &v) in self.word.iter().enumerate() {
            pos[v - 1] = j + 1;
        }
        pos
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            word: self.positions(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(j, &v)| v == j + 1)
    }

    /// The value-reversed word `n + 1 - σ(j)`.
    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses a comma-separated 1-based word such as `"2,1,6,5,3,4"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<usize>()
                    .map_err(|_| PermError::Parse(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(word)
    }
}

/// `result(j) = outer(inner(j))`, the product `P_outer · P_inner`.
pub fn compose(outer: &Permutation, inner: &Permutation) -> Result<Permutation, PermError> {
    if outer.len() != inner.len() {
        return Err(PermError::LengthMismatch {
            left: outer.len(),
            right: inner.len(),
        });
    }
    Ok(Permutation {
        word: inner.word.iter().map(|&j| outer.apply(j)).collect(),
    })
}

/// Kronecker product: `result((i-1)m + j) = (a(i)-1)m + b(j)`.
pub fn kron(a: &Permutation, b: &Permutation) -> Permutation {
    let m = b.len();
    let mut word = Vec::with_capacity(a.len() * m);
    for &ai in &a.word {
        let base = (ai - 1) * m;
        word.extend(b.word.iter().map(|&bj| base + bj));
    }
    Permutation { word }
}

/// `a ⊕ b`: `a` in the top-left block, `b` shifted into the bottom-right.
pub fn direct_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = a.len();
    let mut word = a.word.clone();
    word.extend(b.word.iter().map(|&v| v + shift));
    Permutation { word }
}

/// `a ⊖ b`: the matrix with `P_a` bottom-left and `P_b` top-right, so the
/// first `|a|` positions take the high values.
pub fn skew_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let shift = b.len();
    let mut word: Vec<usize> = a.word.iter().map(|&v| v + shift).collect();
    word.extend_from_slice(&b.word);
    Permutation { word }
}

/// Wreath-product element `(blocks) ⋊ rho`.
///
/// Position block `i` (positions `(i-1)n+1 ..= in`) holds `blocks[rho(i)]`
/// with its values shifted by `(rho(i) - 1) n`, so `blocks` is indexed by
/// the external key (value block) rather than by position.
pub fn assemble_wreath(
    rho: &Permutation,
    blocks: &[Permutation],
) -> Result<Permutation, PermError> {
    let m = rho.len();
    if blocks.len() != m {
        return Err(PermError::BlockCount {
            expected: m,
            found: blocks.len(),
        });
    }
    let n = blocks[0].len();
    if let Some((index, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() != n) {
        return Err(PermError::BlockSize {
            index,
            expected: n,
            found: b.len(),
        });
    }
    let mut word = Vec::with_capacity(n * m);
    for &key in &rho.word {
        let shift = (key - 1) * n;
        word.extend(blocks[key - 1].word.iter().map(|&v| v + shift));
    }
    Ok(Permutation { word })
}

/// Length of a longest strictly increasing subsequence of `values`
/// (patience sorting with binary search over pile tops).
fn lis_of(values: impl Iterator<Item = usize>) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for v in values {
        let idx = tops.partition_point(|&t| t < v);
        if idx == tops.len() {
            tops.push(v);
        } else {
            tops[idx] = v;
        }
    }
    tops.len()
}

pub fn lis(p: &Permutation) -> usize {
    lis_of(p.word.iter().copied())
}

pub fn lds(p: &Permutation) -> usize {
    let n = p.len();
    lis_of(p.word.iter().map(|&v| n + 1 - v))
}

/// Number of orbits of `j ↦ p(j)`.
pub fn cycle_count(p: &Permutation) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p.word[j] - 1;
        }
    }
    cycles
}

/// Number of prefix maxima (records) of the word.
pub fn ltr_maxima_len(p: &Permutation) -> usize {
    let mut best = 0;
    p.word
        .iter()
        .filter(|&&v| {
            let rec = v > best;
            best = best.max(v);
            rec
        })
        .count()
}

/// Number of prefix minima of the word.
pub fn ltr_minima_len(p: &Permutation) -> usize {
    let mut best = usize::MAX;
    p.word
        .iter()
        .filter(|&&v| {
            let rec = v < best;
            best = best.min(v);
            rec
        })
        .count()
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = if n == 0 {
        None
    } else {
        Some((1..=n).collect::<Vec<_>>())
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut w = current.clone();
        // standard next-permutation step
        if let Some(i) = (0..w.len().saturating_sub(1))
            .rev()
            .find(|&i| w[i] < w[i + 1])
        {
            let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
            w.swap(i, j);
            w[i + 1..].reverse();
            next = Some(w);
        }
        Some(Permutation { word: current })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Exponential oracle: longest increasing subsequence over all subsets.
    fn brute_lis(w: &[usize]) -> usize {
        let n = w.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<usize> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| w[i])
                    .collect();
                picked.windows(2).all(|x| x[0] < x[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn identity_and_validation() {
        assert_eq!(Permutation::identity(1).unwrap().word(), &[1]);
        assert_eq!(Permutation::identity(3).unwrap().word(), &[1, 2, 3]);
        assert_eq!(cycle_count(&Permutation::identity(6).unwrap()), 6);
        assert_eq!(Permutation::identity(0), Err(PermError::Empty));
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        let q = p("2,1,6,5,3,4");
        assert_eq!(q.to_string(), "2,1,6,5,3,4");
        assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        assert_eq!(p(" 3, 1,2 ").word(), &[3, 1, 2]);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&p("2,1"), &p("2,1")).unwrap(), p("1,2"));
        let s = p("3,1,4,2");
        assert_eq!(compose(&Permutation::identity(4).unwrap(), &s).unwrap(), s);
        assert_eq!(compose(&p("1,3,2"), &p("3,1,2")).unwrap(), p("2,1,3"));
        assert_eq!(
            compose(&p("1,2"), &p("1,2,3")),
            Err(PermError::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&p("1,2"), &p("2,1")), p("2,1,4,3"));
        assert_eq!(kron(&p("2,1"), &p("1,2")), p("3,4,1,2"));
        let id6 = Permutation::identity(6).unwrap();
        assert_eq!(
            kron(
                &Permutation::identity(2).unwrap(),
                &Permutation::identity(3).unwrap()
            ),
            id6
        );
    }

    #[test]
    fn sum_examples() {
        assert_eq!(direct_sum(&p("2,1"), &p("1,2")), p("2,1,3,4"));
        let id2 = Permutation::identity(2).unwrap();
        assert_eq!(direct_sum(&id2, &id2), Permutation::identity(4).unwrap());
        assert_eq!(direct_sum(&p("2,1"), &p("2,1")), kron(&p("1,2"), &p("2,1")));

        assert_eq!(skew_sum(&p("2,1"), &p("1,2")), p("4,3,1,2"));
        let id1 = Permutation::identity(1).unwrap();
        assert_eq!(skew_sum(&id1, &id1), p("2,1"));
        assert_eq!(skew_sum(&p("1,2"), &p("1,2")), p("3,4,1,2"));
        assert_eq!(skew_sum(&p("1,2"), &p("1,2")), kron(&p("2,1"), &p("1,2")));
    }

    #[test]
    fn wreath_examples() {
        let blocks = [p("2,1"), p("1,2"), p("2,1")];
        assert_eq!(
            assemble_wreath(&p("1,3,2"), &blocks).unwrap(),
            p("2,1,6,5,3,4")
        );
        let id3 = Permutation::identity(3).unwrap();
        let ids = vec![Permutation::identity(2).unwrap(); 3];
        assert_eq!(
            assemble_wreath(&id3, &ids).unwrap(),
            Permutation::identity(6).unwrap()
        );
        assert_eq!(
            assemble_wreath(&p("2,1"), &[p("1,2"), p("2,1")]).unwrap(),
            p("4,3,1,2")
        );

        assert!(matches!(
            assemble_wreath(&p("2,1"), &[p("1,2"), p("1")]),
            Err(PermError::BlockSize { index: 1, .. })
        ));
        assert!(matches!(
            assemble_wreath(&p("2,1"), &[p("1,2")]),
            Err(PermError::BlockCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn statistics_examples() {
        assert_eq!(lis(&p("3,5,2,4,1,6")), 3);
        assert_eq!(brute_lis(&[3, 5, 2, 4, 1, 6]), 3);
        let id = Permutation::identity(7).unwrap();
        assert_eq!((lis(&id), lds(&id)), (7, 1));
        let q = p("2,1,4,3");
        assert_eq!((lis(&q), lds(&q)), (2, 2));

        assert_eq!(cycle_count(&p("2,1,4,3")), 2);
        assert_eq!(cycle_count(&p("2,3,1")), 1);

        let w = p("2,1,6,5,3,4");
        assert_eq!((ltr_maxima_len(&w), ltr_minima_len(&w)), (2, 2));
        assert_eq!((ltr_maxima_len(&id), ltr_minima_len(&id)), (7, 1));
        let v = p("3,5,2,4,1,6");
        assert_eq!((ltr_maxima_len(&v), ltr_minima_len(&v)), (3, 3));
    }

    #[test]
    fn standardize_relabels() {
        assert_eq!(Permutation::standardize(&[6, 5]).unwrap(), p("2,1"));
        assert_eq!(Permutation::standardize(&[9, 3, 7]).unwrap(), p("3,1,2"));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_permutations(n).count()).collect();
        assert_eq!(counts, vec![1, 2, 6, 24, 120, 720]);
        let mut all: Vec<_> = all_permutations(4).collect();
        all.dedup();
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn exhaustive_inverse_and_lis_oracle() {
        for n in 1..=6 {
            let id = Permutation::identity(n).unwrap();
            for q in all_permutations(n) {
                assert_eq!(compose(&q, &q.inverse()).unwrap(), id);
                assert_eq!(compose(&q.inverse(), &q).unwrap(), id);
            }
        }
        for n in 1..=8 {
            for q in all_permutations(n) {
                assert_eq!(lis(&q), brute_lis(q.word()), "{q}");
                assert_eq!(lds(&q), brute_lis(q.complement().word()), "{q}");
            }
        }
    }

    #[test]
    fn kron_is_wreath_with_equal_blocks() {
        for m in 1..=4 {
            for n in 1..=4 {
                for a in all_permutations(m) {
                    for b in all_permutations(n) {
                        let copies = vec![b.clone(); m];
                        assert_eq!(kron(&a, &b), assemble_wreath(&a, &copies).unwrap());
                    }
                }
            }
        }
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|w| Permutation::new(w).unwrap())
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_perm(4), b in arb_perm(4), c in arb_perm(4)) {
            prop_assert_eq!(kron(&a, &kron(&b, &c)), kron(&kron(&a, &b), &c));
        }

        #[test]
        fn compose_with_inverse(q in arb_perm(40)) {
            let id = Permutation::identity(q.len()).unwrap();
            prop_assert_eq!(compose(&q, &q.inverse()).unwrap(), id);
        }

        #[test]
        fn stats_are_positive(q in arb_perm(40)) {
            prop_assert!(lis(&q) >= 1);
            prop_assert!(lds(&q) >= 1);
            // Erdős–Szekeres
            prop_assert!(lis(&q) * lds(&q) >= q.len());
        }

        #[test]
        fn parse_display_roundtrip(q in arb_perm(30)) {
            prop_assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        }
    }
}
