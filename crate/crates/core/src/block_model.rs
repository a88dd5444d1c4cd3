//! Depths in the BST of a wreath-product permutation from the tree of the
//! outer permutation and the `(h, ℓ, r)` summaries of the blocks.
//!
//! The keys of block `j` (values `(j-1)n+1 ..= jn`) form a subtree shaped
//! like `T(π_j)`, and these subtrees hang off each other along `T(ρ)`.
//! Leaving block `y` towards a smaller block walks down the left edge of its
//! subtree (`ℓ^{(y)} + 1` edges), towards a larger one down the right edge
//! (`r^{(y)} + 1` edges).

use thiserror::Error;

use crate::bst::{Bst, BstError, BstSummary};
use crate::perm::{assemble_wreath, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("selector is undefined when x = y = {0}")]
    Tie(usize),
    #[error("expected {expected} block summaries, got {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("block {index} has size {found}, expected {expected}")]
    BlockSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("internal depth {depth} exceeds the height {height} of block {key}")]
    InternalDepth {
        key: usize,
        depth: usize,
        height: usize,
    },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Bst(#[from] BstError),
}

/// `G(x, y, u, v)`: `u` if `x > y`, `v` if `x < y`.
pub fn g_select<T>(x: usize, y: usize, u: T, v: T) -> Result<T, BlockError> {
    match x.cmp(&y) {
        std::cmp::Ordering::Greater => Ok(u),
        std::cmp::Ordering::Less => Ok(v),
        std::cmp::Ordering::Equal => Err(BlockError::Tie(x)),
    }
}

/// Outer permutation, its tree, and one summary per block indexed by
/// external key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    rho: Permutation,
    internal: Vec<BstSummary>,
    external_tree: Bst,
}

impl BlockDecomposition {
    pub fn new(rho: Permutation, internal: Vec<BstSummary>) -> Result<Self, BlockError> {
        if internal.len() != rho.len() {
            return Err(BlockError::BlockCount {
                expected: rho.len(),
                found: internal.len(),
            });
        }
        let n = internal[0].size;
        if let Some((index, s)) = internal.iter().enumerate().find(|(_, s)| s.size != n) {
            return Err(BlockError::BlockSize {
                index,
                expected: n,
                found: s.size,
            });
        }
        let external_tree = Bst::build(&rho);
        Ok(BlockDecomposition {
            rho,
            internal,
            external_tree,
        })
    }

    /// Summaries of `T(blocks[j])`, with `blocks` indexed by external key
    /// as in [`assemble_wreath`].
    pub fn from_blocks(rho: Permutation, blocks: &[Permutation]) -> Result<Self, BlockError> {
        let internal = blocks.iter().map(|b| Bst::build(b).summary()).collect();
        BlockDecomposition::new(rho, internal)
    }

    pub fn rho(&self) -> &Permutation {
        &self.rho
    }

    pub fn internal(&self) -> &[BstSummary] {
        &self.internal
    }

    pub fn external_tree(&self) -> &Bst {
        &self.external_tree
    }

    pub fn block_size(&self) -> usize {
        self.internal[0].size
    }

    /// Edges spent on the external path from the root block to block `key`.
    pub fn external_offset(&self, key: usize) -> Result<usize, BlockError> {
        let path = self.external_tree.path_from_root(key)?;
        path.windows(2).try_fold(0, |acc, w| {
            let s = &self.internal[w[0] - 1];
            Ok(acc + g_select(w[0], w[1], s.left_edge + 1, s.right_edge + 1)?)
        })
    }
}

/// Depth of the node at `internal_depth` inside block `key`.
pub fn block_node_depth(
    d: &BlockDecomposition,
    key: usize,
    internal_depth: usize,
) -> Result<usize, BlockError> {
    let offset = d.external_offset(key)?;
    let height = d.internal[key - 1].height;
    if internal_depth > height {
        return Err(BlockError::InternalDepth {
            key,
            depth: internal_depth,
            height,
        });
    }
    Ok(offset + internal_depth)
}

/// `max_j (offset(j) + h(π_j))`.
pub fn block_height(d: &BlockDecomposition) -> usize {
    (1..=d.rho.len())
        .map(|j| block_node_depth(d, j, d.internal[j - 1].height).expect("valid key"))
        .max()
        .expect("m >= 1")
}

/// The decomposition of `(ρ, blocks)` together with the assembled
/// permutation.
pub fn decompose(
    rho: &Permutation,
    blocks: &[Permutation],
) -> Result<(BlockDecomposition, Permutation), BlockError> {
    let whole = assemble_wreath(rho, blocks)?;
    Ok((BlockDecomposition::from_blocks(rho.clone(), blocks)?, whole))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::samplers::{uniform_permutation, RngState};
    use rand::Rng;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn check_all_depths(rho: &Permutation, blocks: &[Permutation]) {
        let (d, whole) = decompose(rho, blocks).unwrap();
        let direct = Bst::build(&whole);
        let n = d.block_size();
        for (j, b) in blocks.iter().enumerate() {
            let inner = Bst::build(b);
            for x in 1..=n {
                let global = j * n + x;
                assert_eq!(
                    block_node_depth(&d, j + 1, inner.depth(x).unwrap()).unwrap(),
                    direct.depth(global).unwrap(),
                    "rho = {rho}, blocks = {blocks:?}, key = {global}"
                );
            }
        }
        assert_eq!(block_height(&d), direct.height());
    }

    #[test]
    fn selector() {
        assert_eq!(g_select(3, 2, 10, 20).unwrap(), 10);
        assert_eq!(g_select(1, 4, 10, 20).unwrap(), 20);
        assert_eq!(g_select(2, 2, 10, 20), Err(BlockError::Tie(2)));
    }

    #[test]
    fn three_blocks_of_two() {
        let rho = p("1,3,2");
        let blocks = [p("2,1"), p("1,2"), p("2,1")];
        let (d, whole) = decompose(&rho, &blocks).unwrap();
        assert_eq!(whole, p("2,1,6,5,3,4"));
        // r(block 1) + 1 + ℓ(block 3) + 1 + h(block 2)
        assert_eq!(block_node_depth(&d, 2, 1).unwrap(), 4);
        assert_eq!(block_height(&d), 4);
        check_all_depths(&rho, &blocks);
    }

    #[test]
    fn degenerate_cases() {
        let d = BlockDecomposition::from_blocks(p("1"), &[p("3,1,2")]).unwrap();
        assert_eq!(block_node_depth(&d, 1, 2).unwrap(), 2);
        assert_eq!(block_height(&d), 2);
        assert!(matches!(
            block_node_depth(&d, 1, 3),
            Err(BlockError::InternalDepth { .. })
        ));
        assert!(block_node_depth(&d, 2, 0).is_err());

        let rho = p("3,5,2,4,1,6");
        let d = BlockDecomposition::from_blocks(rho.clone(), &vec![p("1"); 6]).unwrap();
        assert_eq!(block_height(&d), Bst::build(&rho).height());

        assert!(matches!(
            BlockDecomposition::from_blocks(p("2,1"), &[p("1")]),
            Err(BlockError::BlockCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            BlockDecomposition::from_blocks(p("2,1"), &[p("1"), p("2,1")]),
            Err(BlockError::BlockSize { index: 1, .. })
        ));
    }

    #[test]
    fn exhaustive_small() {
        for m in 1..=3 {
            for n in 1..=3 {
                let inner: Vec<Permutation> = all_permutations(n).collect();
                let tuples = inner.len().pow(m as u32);
                for rho in all_permutations(m) {
                    for t in 0..tuples {
                        let mut code = t;
                        let blocks: Vec<Permutation> = (0..m)
                            .map(|_| {
                                let b = inner[code % inner.len()].clone();
                                code /= inner.len();
                                b
                            })
                            .collect();
                        check_all_depths(&rho, &blocks);
                    }
                }
            }
        }
    }

    #[test]
    fn random_cases() {
        let state = RngState::new(77);
        for i in 0..1000 {
            let mut rng = state.substream(i).rng();
            let m = rng.random_range(1..=8);
            let n = rng.random_range(1..=8);
            let rho = uniform_permutation(m, &mut rng);
            let blocks: Vec<Permutation> =
                (0..m).map(|_| uniform_permutation(n, &mut rng)).collect();
            check_all_depths(&rho, &blocks);
        }
    }

    #[test]
    fn height_dominates_blocks() {
        let state = RngState::new(78);
        for i in 0..200 {
            let mut rng = state.substream(i).rng();
            let rho = uniform_permutation(5, &mut rng);
            let blocks: Vec<Permutation> =
                (0..5).map(|_| uniform_permutation(6, &mut rng)).collect();
            let d = BlockDecomposition::from_blocks(rho, &blocks).unwrap();
            let max_inner = d.internal().iter().map(|s| s.height).max().unwrap();
            assert!(block_height(&d) >= max_inner);
        }
    }
}
