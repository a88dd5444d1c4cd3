//! Seeded samplers for uniform permutations, block products, butterflies and
//! the two distributional recursions for LIS and cycle counts.
//!
//! Every random quantity is drawn from a [`ChaCha8Rng`] keyed by an
//! [`RngState`]. Monte Carlo loops give trial `i` its own stream `i`, so
//! results do not depend on thread scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::butterfly::{ButterflyShape, S2};
use crate::perm::{assemble_wreath, kron, Permutation};

pub const DEFAULT_SEED: u64 = 20240917;

/// Seed plus stream id of a ChaCha8 generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        RngState { seed, stream }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// State for trial `i` of an experiment seeded with `self.seed`.
    pub fn substream(&self, i: u64) -> RngState {
        RngState {
            seed: self.seed,
            stream: i,
        }
    }
}

impl Default for RngState {
    fn default() -> Self {
        RngState::new(DEFAULT_SEED)
    }
}

/// Runs `f` once per trial on its own substream and returns the results in
/// trial order.
pub fn map_trials<T, F>(state: RngState, trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
{
    let run = |i: u64| f(&mut state.substream(i).rng());
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(run).collect()
    }
}

/// Uniform element of `S_n` by a Fisher–Yates shuffle of the identity.
///
/// # Panics
/// If `n == 0`.
pub fn uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    assert!(n >= 1, "uniform_permutation needs n >= 1");
    let mut word: Vec<usize> = (1..=n).collect();
    word.shuffle(rng);
    Permutation::from_word_unchecked(word)
}

/// Uniform element of `S_n ≀ S_m`: an outer `ρ ∈ S_m` and `m` iid blocks.
pub fn sample_wreath<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Permutation {
    let rho = uniform_permutation(m, rng);
    let blocks: Vec<Permutation> = (0..m).map(|_| uniform_permutation(n, rng)).collect();
    assemble_wreath(&rho, &blocks).expect("blocks have equal size")
}

/// Uniform element of `S_m ⊗ S_n`.
pub fn sample_kron<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Permutation {
    let rho = uniform_permutation(m, rng);
    let pi = uniform_permutation(n, rng);
    kron(&rho, &pi)
}

fn fair_choice<R: Rng + ?Sized>(rng: &mut R) -> S2 {
    S2::from_bit(rng.random::<bool>())
}

pub fn sample_simple_shape<R: Rng + ?Sized>(n: u32, rng: &mut R) -> ButterflyShape {
    ButterflyShape::simple((0..n).map(|_| fair_choice(rng)).collect()).expect("n >= 1")
}

pub fn sample_nonsimple_shape<R: Rng + ?Sized>(n: u32, rng: &mut R) -> ButterflyShape {
    let bits = (1usize << n) - 1;
    ButterflyShape::nonsimple(n, (0..bits).map(|_| fair_choice(rng)).collect()).expect("n >= 1")
}

/// Uniform element of the simple butterfly group of length `2^n`.
pub fn sample_simple_butterfly<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Permutation {
    sample_simple_shape(n, rng).build()
}

/// Uniform element of the nonsimple butterfly group of length `2^n`.
pub fn sample_nonsimple_butterfly<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Permutation {
    sample_nonsimple_shape(n, rng).build()
}

/// `X_0 = 1`, `X_{n+1} = X + X'` on a `12` bit and `max(X, X')` on `21`,
/// the law of the LIS of a uniform nonsimple butterfly of length `2^n`.
pub fn sample_lis_law<R: Rng + ?Sized>(n: u32, rng: &mut R) -> u64 {
    if n == 0 {
        return 1;
    }
    let sum = rng.random::<bool>();
    let x = sample_lis_law(n - 1, rng);
    let y = sample_lis_law(n - 1, rng);
    if sum {
        x + y
    } else {
        x.max(y)
    }
}

/// `Y_0 = 1`, `Y_{n+1} = Y + η Y'` with a fair bit `η`, the law of the cycle
/// count of a uniform nonsimple butterfly of length `2^n`.
pub fn sample_cycle_law<R: Rng + ?Sized>(n: u32, rng: &mut R) -> u64 {
    if n == 0 {
        return 1;
    }
    let eta = rng.random::<bool>();
    let y = sample_cycle_law(n - 1, rng);
    if eta {
        y + sample_cycle_law(n - 1, rng)
    } else {
        y
    }
}
