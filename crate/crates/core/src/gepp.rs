//! Random scalar butterfly matrices and Gaussian elimination with partial
//! pivoting (GEPP).
//!
//! `R_θ = [[cos θ, sin θ], [−sin θ, cos θ]]`. A simple butterfly matrix is
//! `R_{θ_n} ⊗ ... ⊗ R_{θ_1}`; a nonsimple one is `(R_θ ⊗ I)(A_1 ⊕ A_2)` with
//! independent nonsimple `A_1`, `A_2` of half the order and base case `[1]`.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rand::Rng;
use thiserror::Error;

use crate::butterfly::{enumerate_nonsimple, enumerate_simple, ShapeKind};
use crate::perm::Permutation;
use crate::samplers::{map_trials, RngState};
use crate::stats::{chi_square_test, ChiSquareReport};

/// Columns whose largest remaining entry is below this are singular.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeppError {
    #[error("matrix order must be at least 1")]
    Empty,
    #[error("{found} entries do not fill an order-{order} matrix")]
    Shape { order: usize, found: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("column {column} is numerically singular (max |entry| = {max})")]
    Singular { column: usize, max: f64 },
    #[error("{found} angles supplied, {expected} needed")]
    AngleCount { expected: usize, found: usize },
    #[error("depth {depth} exceeds the cap {cap} for {kind} uniformity checks")]
    Cap {
        kind: ShapeKind,
        depth: u32,
        cap: u32,
    },
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(order: usize, data: Vec<f64>) -> Result<Self, GeppError> {
        if order == 0 {
            return Err(GeppError::Empty);
        }
        if data.len() != order * order {
            return Err(GeppError::Shape {
                order,
                found: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(GeppError::NonFinite);
        }
        Ok(SquareMatrix { order, data })
    }

    pub fn identity(order: usize) -> Self {
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            data[i * order + i] = 1.0;
        }
        SquareMatrix { order, data }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        SquareMatrix {
            order: 2,
            data: vec![c, s, -s, c],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.order + col]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn kron(&self, other: &SquareMatrix) -> SquareMatrix {
        let (a, b) = (self.order, other.order);
        let n = a * b;
        let mut data = vec![0.0; n * n];
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                for k in 0..b {
                    for l in 0..b {
                        data[(i * b + k) * n + j * b + l] = x * other.get(k, l);
                    }
                }
            }
        }
        SquareMatrix { order: n, data }
    }

    pub fn direct_sum(&self, other: &SquareMatrix) -> SquareMatrix {
        let (a, b) = (self.order, other.order);
        let n = a + b;
        let mut data = vec![0.0; n * n];
        for i in 0..a {
            data[i * n..i * n + a].copy_from_slice(&self.data[i * a..(i + 1) * a]);
        }
        for i in 0..b {
            data[(a + i) * n + a..(a + i + 1) * n].copy_from_slice(&other.data[i * b..(i + 1) * b]);
        }
        SquareMatrix { order: n, data }
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += x * other.get(k, j);
                }
            }
        }
        SquareMatrix { order: n, data }
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        SquareMatrix { order: n, data }
    }

    /// `P_π M`: row `j` of `M` moves to row `π(j)`.
    pub fn permute_rows(&self, pi: &Permutation) -> SquareMatrix {
        assert_eq!(pi.len(), self.order);
        let n = self.order;
        let mut data = vec![0.0; n * n];
        for j in 0..n {
            let to = pi.apply(j + 1) - 1;
            data[to * n..(to + 1) * n].copy_from_slice(&self.data[j * n..(j + 1) * n]);
        }
        SquareMatrix { order: n, data }
    }

    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `R_{θ_n} ⊗ ... ⊗ R_{θ_1}` with `angles[0] = θ_1` innermost.
pub fn simple_butterfly_matrix(angles: &[f64]) -> Result<SquareMatrix, GeppError> {
    let (first, rest) = angles.split_first().ok_or(GeppError::AngleCount {
        expected: 1,
        found: 0,
    })?;
    Ok(rest.iter().fold(SquareMatrix::rotation(*first), |acc, &t| {
        SquareMatrix::rotation(t).kron(&acc)
    }))
}

/// Nonsimple butterfly matrix of order `2^n` with one angle per internal
/// node, level order with the root first (children of `i` at `2i+1`,
/// `2i+2`), matching nonsimple shapes.
pub fn nonsimple_butterfly_matrix(n: u32, angles: &[f64]) -> Result<SquareMatrix, GeppError> {
    let expected = (1usize << n) - 1;
    if n == 0 || angles.len() != expected {
        return Err(GeppError::AngleCount {
            expected,
            found: angles.len(),
        });
    }
    Ok(nonsimple_node(angles, 0, n))
}

fn nonsimple_node(angles: &[f64], node: usize, levels: u32) -> SquareMatrix {
    if levels == 0 {
        return SquareMatrix::identity(1);
    }
    let a1 = nonsimple_node(angles, 2 * node + 1, levels - 1);
    let a2 = nonsimple_node(angles, 2 * node + 2, levels - 1);
    let half = a1.order;
    SquareMatrix::rotation(angles[node])
        .kron(&SquareMatrix::identity(half))
        .mul(&a1.direct_sum(&a2))
}

fn angles<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    (0..count).map(|_| rng.random::<f64>() * TAU).collect()
}

/// Kronecker product of `n` rotations with iid uniform angles.
pub fn random_simple_butterfly_matrix<R: Rng + ?Sized>(n: u32, rng: &mut R) -> SquareMatrix {
    simple_butterfly_matrix(&angles(n as usize, rng)).expect("n >= 1")
}

/// Nonsimple butterfly matrix with iid uniform angles.
pub fn random_nonsimple_butterfly_matrix<R: Rng + ?Sized>(n: u32, rng: &mut R) -> SquareMatrix {
    nonsimple_butterfly_matrix(n, &angles((1usize << n) - 1, rng)).expect("n >= 1")
}

/// `P_π M = L U` with `L` unit lower triangular and `U` upper triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors {
    pub perm: Permutation,
    pub l: SquareMatrix,
    pub u: SquareMatrix,
}

impl LuFactors {
    /// `max |P_π M − L U|`.
    pub fn reconstruction_error(&self, m: &SquareMatrix) -> f64 {
        m.permute_rows(&self.perm)
            .max_abs_diff(&self.l.mul(&self.u))
    }
}

/// Partial pivoting: at step `k` the pivot is the row among `k..N` with the
/// largest `|entry|` in column `k`, ties going to the smallest row index.
pub fn gepp(m: &SquareMatrix) -> Result<LuFactors, GeppError> {
    let n = m.order;
    let mut a = m.data.clone();
    // order[k] = original row now in position k
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut pivot = k;
        let mut best = a[k * n + k].abs();
        for i in k + 1..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if best < SINGULAR_THRESHOLD {
            return Err(GeppError::Singular {
                column: k,
                max: best,
            });
        }
        if pivot != k {
            for j in 0..n {
                a.swap(k * n + j, pivot * n + j);
            }
            order.swap(k, pivot);
        }
        let p = a[k * n + k];
        for i in k + 1..n {
            let f = a[i * n + k] / p;
            a[i * n + k] = f;
            for j in k + 1..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    let mut l = SquareMatrix::identity(n);
    let mut u = SquareMatrix {
        order: n,
        data: vec![0.0; n * n],
    };
    for i in 0..n {
        for j in 0..n {
            if j < i {
                l.data[i * n + j] = a[i * n + j];
            } else {
                u.data[i * n + j] = a[i * n + j];
            }
        }
    }
    // row order[k] of M lands in row k, so π(order[k]) = k
    let mut word = vec![0usize; n];
    for (k, &row) in order.iter().enumerate() {
        word[row] = k + 1;
    }
    Ok(LuFactors {
        perm: Permutation::from_word_unchecked(word),
        l,
        u,
    })
}

pub fn gepp_permutation(m: &SquareMatrix) -> Result<Permutation, GeppError> {
    gepp(m).map(|f| f.perm)
}

/// Histogram of GEPP permutations over the enumerated butterfly group.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub kind: ShapeKind,
    pub depth: u32,
    pub trials: u64,
    /// `(group element, count)` in enumeration order.
    pub counts: Vec<(Permutation, u64)>,
    /// Samples that were not group elements or hit a singular pivot.
    pub outside: u64,
    pub chi_square: ChiSquareReport,
}

pub const SIMPLE_UNIFORMITY_CAP: u32 = 10;
pub const NONSIMPLE_UNIFORMITY_CAP: u32 = 3;

pub fn uniformity_check(
    n: u32,
    trials: u64,
    state: RngState,
    kind: ShapeKind,
) -> Result<UniformityReport, GeppError> {
    let cap = match kind {
        ShapeKind::Simple => SIMPLE_UNIFORMITY_CAP,
        ShapeKind::Nonsimple => NONSIMPLE_UNIFORMITY_CAP,
    };
    if n == 0 || n > cap {
        return Err(GeppError::Cap {
            kind,
            depth: n,
            cap,
        });
    }
    let group: Vec<Permutation> = match kind {
        ShapeKind::Simple => enumerate_simple(n).expect("n in range").collect(),
        ShapeKind::Nonsimple => enumerate_nonsimple(n).expect("n in range").collect(),
    };
    let samples = map_trials(state, trials, |rng| {
        let m = match kind {
            ShapeKind::Simple => random_simple_butterfly_matrix(n, rng),
            ShapeKind::Nonsimple => random_nonsimple_butterfly_matrix(n, rng),
        };
        gepp_permutation(&m).ok()
    });
    let index: HashMap<&Permutation, usize> =
        group.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut tally = vec![0u64; group.len()];
    let mut outside = 0;
    for s in &samples {
        match s.as_ref().and_then(|q| index.get(q)) {
            Some(&i) => tally[i] += 1,
            None => outside += 1,
        }
    }
    let probs = vec![1.0 / group.len() as f64; group.len()];
    let chi_square = chi_square_test(&tally, &probs);
    Ok(UniformityReport {
        kind,
        depth: n,
        trials,
        counts: group.into_iter().zip(tally).collect(),
        outside,
        chi_square,
    })
}
