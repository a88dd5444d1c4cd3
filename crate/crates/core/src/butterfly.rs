//! Simple and nonsimple butterfly permutations of length `N = 2^n`.
//!
//! Simple butterflies are n-fold Kronecker products of elements of `S_2`;
//! nonsimple ones are n-fold wreath products. A nonsimple permutation is
//! described by a full binary tree of `S_2` choices with `2^n - 1` internal
//! nodes stored in level order (root first, children of node `i` at `2i+1`
//! and `2i+2`). A node of size `2M` with halves `w1` (left child) and `w2`
//! (right child) produces
//!
//! * `(w1 | w2 + M)` when its bit is `12`, and
//! * `(w1 + M | w2)` when its bit is `21`,
//!
//! which is the word of `(ρ ⊗ id)(w1 ⊕ w2)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bst::BstSummary;
use crate::perm::{kron, Permutation};

/// Largest nonsimple depth that can be enumerated at all (`2^63` shapes).
pub const MAX_NONSIMPLE_DEPTH: u32 = 6;
/// Default enumeration cap for nonsimple butterflies (`2^15` elements at 4).
pub const DEFAULT_NONSIMPLE_CAP: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ButterflyError {
    #[error("butterfly depth must be at least 1")]
    EmptyShape,
    #[error("nonsimple shape of depth {depth} needs {expected} bits, got {found}")]
    MalformedShape {
        depth: u32,
        expected: usize,
        found: usize,
    },
    #[error("length {0} is not a power of two (at least 2)")]
    NotPowerOfTwo(usize),
    #[error("permutation is not a {0} butterfly")]
    NotMember(ShapeKind),
    #[error("depth {depth} exceeds the enumeration cap {cap}")]
    CapExceeded { depth: u32, cap: u32 },
    #[error("cannot parse shape: {0}")]
    Parse(String),
}

/// An element of `S_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum S2 {
    /// The identity `12`.
    Keep,
    /// The transposition `21`.
    Swap,
}

impl S2 {
    pub fn from_bit(bit: bool) -> S2 {
        if bit {
            S2::Swap
        } else {
            S2::Keep
        }
    }

    pub fn bit(self) -> bool {
        self == S2::Swap
    }

    pub fn permutation(self) -> Permutation {
        match self {
            S2::Keep => Permutation::from_word_unchecked(vec![1, 2]),
            S2::Swap => Permutation::from_word_unchecked(vec![2, 1]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Simple,
    Nonsimple,
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Simple => "simple",
            ShapeKind::Nonsimple => "nonsimple",
        })
    }
}

impl FromStr for ShapeKind {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simple" => Ok(ShapeKind::Simple),
            "nonsimple" => Ok(ShapeKind::Nonsimple),
            other => Err(ButterflyError::Parse(format!("unknown kind {other:?}"))),
        }
    }
}

/// Recursion choices for a butterfly permutation of depth `n`.
///
/// For a simple shape `choices[j]` is the factor `π_{j+1}`, innermost first,
/// so the permutation is `choices[n-1] ⊗ ... ⊗ choices[0]`. For a nonsimple
/// shape `choices` is the level-ordered tree of `2^n - 1` node choices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ButterflyShape {
    kind: ShapeKind,
    depth: u32,
    choices: Vec<S2>,
}

impl ButterflyShape {
    pub fn simple(choices: Vec<S2>) -> Result<Self, ButterflyError> {
        if choices.is_empty() {
            return Err(ButterflyError::EmptyShape);
        }
        Ok(ButterflyShape {
            kind: ShapeKind::Simple,
            depth: choices.len() as u32,
            choices,
        })
    }

    pub fn nonsimple(depth: u32, choices: Vec<S2>) -> Result<Self, ButterflyError> {
        if depth == 0 {
            return Err(ButterflyError::EmptyShape);
        }
        let expected = nonsimple_bit_count(depth)?;
        if choices.len() != expected {
            return Err(ButterflyError::MalformedShape {
                depth,
                expected,
                found: choices.len(),
            });
        }
        Ok(ButterflyShape {
            kind: ShapeKind::Nonsimple,
            depth,
            choices,
        })
    }

    /// All-`12` shape, whose permutation is the identity.
    pub fn identity(kind: ShapeKind, depth: u32) -> Result<Self, ButterflyError> {
        match kind {
            ShapeKind::Simple => ButterflyShape::simple(vec![S2::Keep; depth as usize]),
            ShapeKind::Nonsimple => {
                ButterflyShape::nonsimple(depth, vec![S2::Keep; nonsimple_bit_count(depth)?])
            }
        }
    }

    /// Parses the bit-string form (`0` = `12`, `1` = `21`), most significant
    /// character first: the root for nonsimple shapes, the outermost factor
    /// for simple ones. `"001"` is the simple shape `12 ⊗ 12 ⊗ 21`.
    pub fn parse(kind: ShapeKind, s: &str) -> Result<Self, ButterflyError> {
        let mut choices = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(S2::Keep),
                '1' => Ok(S2::Swap),
                other => Err(ButterflyError::Parse(format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        match kind {
            ShapeKind::Simple => {
                choices.reverse();
                ButterflyShape::simple(choices)
            }
            ShapeKind::Nonsimple => {
                let len = choices.len();
                if len == 0 {
                    return Err(ButterflyError::EmptyShape);
                }
                if !(len + 1).is_power_of_two() {
                    return Err(ButterflyError::Parse(format!(
                        "{len} bits do not form a full binary tree"
                    )));
                }
                ButterflyShape::nonsimple((len + 1).trailing_zeros(), choices)
            }
        }
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn choices(&self) -> &[S2] {
        &self.choices
    }

    /// Length `2^n` of the permutation this shape builds.
    pub fn len(&self) -> usize {
        1usize << self.depth
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn build(&self) -> Permutation {
        match self.kind {
            ShapeKind::Simple => build_simple_unchecked(&self.choices),
            ShapeKind::Nonsimple => build_nonsimple(self),
        }
    }

    /// Closed-form `(h, ℓ, r)` of the butterfly tree of this shape.
    pub fn stats(&self) -> BstSummary {
        match self.kind {
            ShapeKind::Simple => stats_simple_unchecked(&self.choices),
            ShapeKind::Nonsimple => stats_recursion_nonsimple(self),
        }
    }
}

impl fmt::Display for ButterflyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bit = |c: &S2| if c.bit() { '1' } else { '0' };
        match self.kind {
            ShapeKind::Simple => self
                .choices
                .iter()
                .rev()
                .try_for_each(|c| write!(f, "{}", bit(c))),
            ShapeKind::Nonsimple => self
                .choices
                .iter()
                .try_for_each(|c| write!(f, "{}", bit(c))),
        }
    }
}

fn nonsimple_bit_count(depth: u32) -> Result<usize, ButterflyError> {
    if depth >= usize::BITS - 1 {
        return Err(ButterflyError::CapExceeded {
            depth,
            cap: usize::BITS - 2,
        });
    }
    Ok((1usize << depth) - 1)
}

/// `choices[n-1] ⊗ ... ⊗ choices[0]`, innermost factor first.
pub fn build_simple(choices: &[S2]) -> Result<Permutation, ButterflyError> {
    if choices.is_empty() {
        return Err(ButterflyError::EmptyShape);
    }
    Ok(build_simple_unchecked(choices))
}

fn build_simple_unchecked(choices: &[S2]) -> Permutation {
    let mut acc = choices[0].permutation();
    for c in &choices[1..] {
        acc = kron(&c.permutation(), &acc);
    }
    acc
}

pub fn build_nonsimple(shape: &ButterflyShape) -> Permutation {
    let n = shape.len();
    let mut word = vec![0usize; n];
    fill_nonsimple(&shape.choices, 0, &mut word, 1);
    Permutation::from_word_unchecked(word)
}

/// Writes the values of the subtree rooted at `node` into `out`, using
/// `base` as the smallest value.
fn fill_nonsimple(choices: &[S2], node: usize, out: &mut [usize], base: usize) {
    let len = out.len();
    if len == 1 {
        out[0] = base;
        return;
    }
    let half = len / 2;
    let (lo, hi) = out.split_at_mut(half);
    let (b1, b2) = match choices[node] {
        S2::Keep => (base, base + half),
        S2::Swap => (base + half, base),
    };
    fill_nonsimple(choices, 2 * node + 1, lo, b1);
    fill_nonsimple(choices, 2 * node + 2, hi, b2);
}

/// Splits a word into its two halves if the first half occupies one
/// contiguous half of the values. Returns the choice and both halves
/// relabeled to `1..=M`.
fn split_halves(word: &[usize], base: usize) -> Option<(S2, Vec<usize>, Vec<usize>)> {
    let half = word.len() / 2;
    let (a, b) = word.split_at(half);
    let in_low = |v: &usize| *v >= base && *v < base + half;
    let choice = if a.iter().all(in_low) {
        S2::Keep
    } else if a.iter().all(|v| !in_low(v)) {
        S2::Swap
    } else {
        return None;
    };
    let (sa, sb) = match choice {
        S2::Keep => (base, base + half),
        S2::Swap => (base + half, base),
    };
    Some((
        choice,
        a.iter().map(|v| v - sa + 1).collect(),
        b.iter().map(|v| v - sb + 1).collect(),
    ))
}

fn log2_len(p: &Permutation) -> Result<u32, ButterflyError> {
    let n = p.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(ButterflyError::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros())
}

/// Recovers the nonsimple shape that builds `p`.
pub fn decode_nonsimple(p: &Permutation) -> Result<ButterflyShape, ButterflyError> {
    let depth = log2_len(p)?;
    let mut choices = vec![S2::Keep; (1usize << depth) - 1];
    // level-order walk over (node, relabeled subword)
    let mut queue = std::collections::VecDeque::from([(0usize, p.word().to_vec())]);
    while let Some((node, w)) = queue.pop_front() {
        if w.len() == 1 {
            continue;
        }
        let (c, a, b) =
            split_halves(&w, 1).ok_or(ButterflyError::NotMember(ShapeKind::Nonsimple))?;
        choices[node] = c;
        queue.push_back((2 * node + 1, a));
        queue.push_back((2 * node + 2, b));
    }
    ButterflyShape::nonsimple(depth, choices)
}

/// Recovers the Kronecker factors (innermost first) of a simple butterfly.
pub fn decode_simple(p: &Permutation) -> Result<ButterflyShape, ButterflyError> {
    log2_len(p)?;
    let mut outer_first = Vec::new();
    let mut w = p.word().to_vec();
    while w.len() > 1 {
        let (c, a, b) = split_halves(&w, 1).ok_or(ButterflyError::NotMember(ShapeKind::Simple))?;
        if a != b {
            return Err(ButterflyError::NotMember(ShapeKind::Simple));
        }
        outer_first.push(c);
        w = a;
    }
    outer_first.reverse();
    ButterflyShape::simple(outer_first)
}

/// False for lengths that are not a power of two.
pub fn is_nonsimple_butterfly(p: &Permutation) -> bool {
    decode_nonsimple(p).is_ok()
}

/// False for lengths that are not a power of two.
pub fn is_simple_butterfly(p: &Permutation) -> bool {
    decode_simple(p).is_ok()
}

/// All `2^n` simple shapes; the choice bits count up from all-`12`.
pub fn simple_shapes(depth: u32) -> Result<impl Iterator<Item = ButterflyShape>, ButterflyError> {
    if depth == 0 {
        return Err(ButterflyError::EmptyShape);
    }
    if depth > 40 {
        return Err(ButterflyError::CapExceeded { depth, cap: 40 });
    }
    Ok((0u64..1 << depth).map(move |mask| {
        let choices = (0..depth)
            .map(|j| S2::from_bit(mask >> j & 1 == 1))
            .collect();
        ButterflyShape {
            kind: ShapeKind::Simple,
            depth,
            choices,
        }
    }))
}

/// All `2^(2^n - 1)` nonsimple shapes, refusing depths above `cap`.
pub fn nonsimple_shapes(
    depth: u32,
    cap: u32,
) -> Result<impl Iterator<Item = ButterflyShape>, ButterflyError> {
    if depth == 0 {
        return Err(ButterflyError::EmptyShape);
    }
    let cap = cap.min(MAX_NONSIMPLE_DEPTH);
    if depth > cap {
        return Err(ButterflyError::CapExceeded { depth, cap });
    }
    let bits = (1u32 << depth) - 1;
    Ok((0u64..1 << bits).map(move |mask| {
        let choices = (0..bits)
            .map(|j| S2::from_bit(mask >> j & 1 == 1))
            .collect();
        ButterflyShape {
            kind: ShapeKind::Nonsimple,
            depth,
            choices,
        }
    }))
}

pub fn enumerate_simple(depth: u32) -> Result<impl Iterator<Item = Permutation>, ButterflyError> {
    Ok(simple_shapes(depth)?.map(|s| s.build()))
}

pub fn enumerate_nonsimple(
    depth: u32,
) -> Result<impl Iterator<Item = Permutation>, ButterflyError> {
    enumerate_nonsimple_capped(depth, DEFAULT_NONSIMPLE_CAP)
}

pub fn enumerate_nonsimple_capped(
    depth: u32,
    cap: u32,
) -> Result<impl Iterator<Item = Permutation>, ButterflyError> {
    Ok(nonsimple_shapes(depth, cap)?.map(|s| s.build()))
}

/// Folds the simple-butterfly recursion
/// `(h, ℓ, r) += (r + 1)(1, 0, 1)` for `12` and `(ℓ + 1)(1, 1, 0)` for `21`,
/// innermost factor first.
pub fn stats_recursion_simple(choices: &[S2]) -> Result<BstSummary, ButterflyError> {
    if choices.is_empty() {
        return Err(ButterflyError::EmptyShape);
    }
    Ok(stats_simple_unchecked(choices))
}

fn stats_simple_unchecked(choices: &[S2]) -> BstSummary {
    // an empty tree of one node is (0, 0, 0); the first fold gives T(12) or T(21)
    let (mut h, mut l, mut r) = (0usize, 0usize, 0usize);
    for c in choices {
        match c {
            S2::Keep => {
                h += r + 1;
                r += r + 1;
            }
            S2::Swap => {
                h += l + 1;
                l += l + 1;
            }
        }
    }
    BstSummary::new(h, l, r, 1 << choices.len())
}

/// `(H, L, R)` of a nonsimple butterfly tree, evaluated bottom-up.
///
/// With `(H1, L1, R1)` for the first half and `(H2, L2, R2)` for the second:
/// `12` gives `(max(H1, R1 + 1 + H2), L1, R1 + 1 + R2)` and `21` gives
/// `(max(H1, L1 + 1 + H2), L1 + 1 + L2, R1)`.
pub fn stats_recursion_nonsimple(shape: &ButterflyShape) -> BstSummary {
    let (h, l, r) = nonsimple_node_stats(&shape.choices, 0, shape.depth);
    BstSummary::new(h, l, r, shape.len())
}

fn nonsimple_node_stats(choices: &[S2], node: usize, levels: u32) -> (usize, usize, usize) {
    if levels == 0 {
        return (0, 0, 0);
    }
    let first = nonsimple_node_stats(choices, 2 * node + 1, levels - 1);
    let second = nonsimple_node_stats(choices, 2 * node + 2, levels - 1);
    combine_nonsimple(choices[node], first, second)
}

/// One step of the nonsimple `(H, L, R)` recursion.
pub fn combine_nonsimple(
    choice: S2,
    (h1, l1, r1): (usize, usize, usize),
    (h2, l2, r2): (usize, usize, usize),
) -> (usize, usize, usize) {
    match choice {
        S2::Keep => (h1.max(r1 + 1 + h2), l1, r1 + 1 + r2),
        S2::Swap => (h1.max(l1 + 1 + h2), l1 + 1 + l2, r1),
    }
}
