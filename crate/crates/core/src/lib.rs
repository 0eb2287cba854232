//! Approximate ±1 homomorphisms on finite groups.
//!
//! For a finite group `G` and a balanced `f: G -> {±1}`, this crate computes the
//! exact probability that `f(xy) = f(x) f(y)` for uniform `x, y`, the spectral
//! upper bounds that follow from the smallest nontrivial irreducible dimension,
//! the coset-extension lower-bound constructions, and searches for highly
//! homomorphic balanced functions on small groups.
//!
//! Module map:
//!
//! - [`group`]: permutation, cyclic, dihedral and product groups; subgroups,
//!   transversals, normalizers and conjugacy classes.
//! - [`signfun`]: dense ±1 functions with exact triple correlation and bias.
//! - [`construct`]: extension of a subgroup sign character along cosets.
//! - [`repr`]: Young's orthogonal form for `S_n` and abelian characters.
//! - [`fourier`]: transform, inversion, Plancherel, convolution and the norm chain.
//! - [`chartab`]: character tables from class-algebra eigenvectors.
//! - [`search`]: exhaustive, class-function, coset-constant and local search.

pub mod chartab;
pub mod construct;
mod error;
pub mod exec;
pub mod fourier;
pub mod group;
pub mod perm;
pub mod repr;
pub mod rng;
pub mod search;
pub mod signfun;

pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{Group, GroupLimits, Subgroup, Transversal};
pub use signfun::SignFunction;

/// Exact rational type used for triple correlations, biases and bounds.
pub type Rational = num_rational::Ratio<i64>;
