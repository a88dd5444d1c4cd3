//! Binary search trees obtained by inserting the entries of a permutation
//! word one at a time into an initially empty tree.
//!
//! Nodes are stored in arrays indexed by key. The insertion tree of a word is
//! the Cartesian tree of the keys `1..=n` with priority "position in the
//! word" (earlier is closer to the root), so it is built in `O(n)` with a
//! stack instead of `O(n · h)` repeated descents. Depths are filled in
//! insertion order, since every parent is inserted before its children.

use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BstError {
    #[error("key {key} outside 1..={size}")]
    KeyOutOfRange { key: usize, size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `(h, ℓ, r)` of a tree: height, depth of the smallest key (top-left edge
/// length) and depth of the largest key (top-right edge length).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BstSummary {
    pub height: usize,
    pub left_edge: usize,
    pub right_edge: usize,
    pub size: usize,
}

impl BstSummary {
    pub fn new(height: usize, left_edge: usize, right_edge: usize, size: usize) -> Self {
        BstSummary {
            height,
            left_edge,
            right_edge,
            size,
        }
    }

    /// The `(h, ℓ, r)` triple without the size.
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.height, self.left_edge, self.right_edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bst {
    root: usize,
    // all indexed by key - 1; links hold 1-based keys
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl Bst {
    pub fn build(p: &Permutation) -> Bst {
        let n = p.len();
        let pos = p.positions();
        let mut left = vec![None; n];
        let mut right = vec![None; n];
        let mut parent = vec![None; n];
        let mut stack: Vec<usize> = Vec::with_capacity(64);

        for key in 1..=n {
            let mut last = None;
            while let Some(&top) = stack.last() {
                if pos[top - 1] < pos[key - 1] {
                    break;
                }
                last = stack.pop();
            }
            left[key - 1] = last;
            if let Some(child) = last {
                parent[child - 1] = Some(key);
            }
            if let Some(&top) = stack.last() {
                // `key` replaces whatever chain hung off top's right side
                right[top - 1] = Some(key);
                parent[key - 1] = Some(top);
            }
            stack.push(key);
        }

        let mut depth = vec![0; n];
        for &key in p.word().iter().skip(1) {
            let par = parent[key - 1].expect("non-root key has a parent");
            depth[key - 1] = depth[par - 1] + 1;
        }

        Bst {
            root: p.apply(1),
            left,
            right,
            parent,
            depth,
        }
    }

    pub fn size(&self) -> usize {
        self.depth.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    fn check(&self, key: usize) -> Result<usize, BstError> {
        if key == 0 || key > self.size() {
            Err(BstError::KeyOutOfRange {
                key,
                size: self.size(),
            })
        } else {
            Ok(key - 1)
        }
    }

    pub fn left_child(&self, key: usize) -> Result<Option<usize>, BstError> {
        Ok(self.left[self.check(key)?])
    }

    pub fn right_child(&self, key: usize) -> Result<Option<usize>, BstError> {
        Ok(self.right[self.check(key)?])
    }

    pub fn parent(&self, key: usize) -> Result<Option<usize>, BstError> {
        Ok(self.parent[self.check(key)?])
    }

    /// Which side of its parent `key` hangs on; `None` for the root.
    pub fn side(&self, key: usize) -> Result<Option<Side>, BstError> {
        let Some(par) = self.parent(key)? else {
            return Ok(None);
        };
        Ok(Some(if key < par { Side::Left } else { Side::Right }))
    }

    /// Number of edges from the root to `key`.
    pub fn depth(&self, key: usize) -> Result<usize, BstError> {
        Ok(self.depth[self.check(key)?])
    }

    /// Depths of keys `1..=n`, in key order.
    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Keys on the path from the root down to `key`, both ends included.
    pub fn path_from_root(&self, key: usize) -> Result<Vec<usize>, BstError> {
        self.check(key)?;
        let mut path = vec![key];
        let mut cur = key;
        while let Some(par) = self.parent[cur - 1] {
            path.push(par);
            cur = par;
        }
        path.reverse();
        Ok(path)
    }

    pub fn summary(&self) -> BstSummary {
        let n = self.size();
        BstSummary {
            height: self.height(),
            left_edge: self.depth[0],
            right_edge: self.depth[n - 1],
            size: n,
        }
    }

    /// Debug dump: one `key,parent,side` line per node in key order, with
    /// `parent` empty and side `root` for the root.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for key in 1..=self.size() {
            match self.parent[key - 1] {
                None => writeln!(out, "{key},,root").unwrap(),
                Some(par) => {
                    let side = if key < par { 'L' } else { 'R' };
                    writeln!(out, "{key},{par},{side}").unwrap()
                }
            }
        }
        out
    }
}

pub fn build_bst(p: &Permutation) -> Bst {
    Bst::build(p)
}

pub fn summary(p: &Permutation) -> BstSummary {
    Bst::build(p).summary()
}
