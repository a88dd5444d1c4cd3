//! Binary search trees of butterfly permutations.
//!
//! Building blocks: permutation algebra ([`perm`]), BST construction and
//! edge statistics ([`bst`]), simple and nonsimple butterflies
//! ([`butterfly`]), seeded samplers ([`samplers`]), exact laws and bounds
//! ([`exact`]), the block decomposition of wreath-product trees
//! ([`block_model`]), Gaussian elimination with partial pivoting on random
//! butterfly matrices ([`gepp`]) and the Boolean-lattice comparability graph
//! ([`lattice`]).

pub mod block_model;
pub mod bst;
pub mod butterfly;
pub mod exact;
pub mod experiments;
pub mod gepp;
pub mod lattice;
pub mod perm;
pub mod samplers;
pub mod stats;

pub use bst::{build_bst, summary, Bst, BstSummary};
pub use butterfly::{ButterflyShape, ShapeKind, S2};
pub use perm::Permutation;
