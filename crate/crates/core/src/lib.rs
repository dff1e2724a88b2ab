//! Sparse signal recovery from underdetermined linear measurements.
//!
//! The crate is `no_std` and only needs an allocator. It bundles:
//!
//! - [`linalg`]: dense products, column-restricted least squares (Richardson and
//!   conjugate gradient), Jacobi eigenvalues and top-k selection;
//! - [`ensembles`]: seeded Gaussian, Bernoulli and partial-DCT measurement
//!   matrices plus sparse/compressible signals and noise;
//! - [`rip`]: exact and sampled restricted isometry constants and checks of
//!   their standard consequences;
//! - [`greedy`]: OMP, StOMP, ROMP and CoSaMP;
//! - [`convex`]: basis pursuit (equality and noise-aware), reweighted ℓ1 and
//!   the reweighted error-bound recursion;
//! - [`kaczmarz`]: the randomized Kaczmarz solver and its noise horizon.
//!
//! Everything is deterministic given its inputs and seeds.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod convex;
pub mod ensembles;
mod error;
pub mod greedy;
pub mod kaczmarz;
pub mod linalg;
pub(crate) mod math;
pub mod rip;
pub mod rng;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, IndexSet, LsConfig, LsMethod, SparseVector};
