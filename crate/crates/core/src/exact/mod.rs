//! Exact laws, moments, constants and bounds.
//!
//! Probabilities in these models are dyadic or have factorial denominators,
//! so everything here is computed with arbitrary-precision integers and
//! rationals. Floating point appears only for the irrational constants.

mod bounds;
mod constants;
mod moments;
mod simple_law;
mod stirling;
mod triple;

pub use bounds::{
    bound_sequences, lower_bound_exact, nonsimple_mean_bounds, upper_bound, BoundSequences,
};
pub use constants::{devroye_constant, Constants};
pub use moments::{
    cycle_law_moments, cycle_limit_moment, cycle_moment, edge_moments, harmonic, MomentTable,
};
pub use simple_law::{
    simple_height_counts, simple_height_mean, simple_height_pmf, MAX_SIMPLE_DEPTH,
};
pub use stirling::{factorial, stirling1_pmf, stirling1_unsigned, StirlingTable};
pub use triple::{
    exact_mean_height, min_nonsimple_height, triple_dist_nonsimple, Triple, TripleDistribution,
    DEFAULT_SUPPORT_CAP,
};

use num_bigint::BigUint;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },
    #[error("argument must be at least {min}, got {found}")]
    TooSmall { min: u64, found: u64 },
    #[error("argument {found} exceeds the supported maximum {max}")]
    TooLarge { max: u64, found: u64 },
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("support of level {level} reached {support} triples, above the cap {cap}")]
    SupportCap {
        level: u32,
        support: usize,
        cap: usize,
    },
}

/// `λ^n` for `λ = 3/2`.
pub fn lambda_pow(n: u32) -> BigRational {
    BigRational::new(
        BigUint::from(3u32).pow(n).into(),
        BigUint::from(2u32).pow(n).into(),
    )
}
