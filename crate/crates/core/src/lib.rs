//! Exact computations with finite permutation groups: Sylow subgroups, subnormalisers,
//! picky elements, cyclotomic character tables and the local–global tag comparison.

pub mod chartab;
pub mod config;
pub mod conjecture;
pub mod cyclo;
pub mod error;
pub mod numtheory;
pub mod perm;
pub mod sylow;
pub mod zoo;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use perm::{Group, Permutation};

/// Cyclotomic numbers over arbitrary-precision rationals.
pub type Cyclo = cyclo::Cyclotomic<num_rational::BigRational>;
