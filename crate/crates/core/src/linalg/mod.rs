//! Deterministic dense linear algebra used by every recovery routine.
//!
//! Nothing here draws random numbers; all functions are pure over their
//! inputs and safe to call from many threads at once.

mod chol;
mod eigen;
mod index_set;
mod lstsq;
mod matrix;
mod select;
mod sparse;

pub use chol::{cholesky_factor, cholesky_solve, solve_spd};
pub use eigen::{extreme_singular_values, symmetric_eigenvalues};
pub use index_set::IndexSet;
pub use lstsq::{least_squares, pseudoinverse_apply, LsConfig, LsMethod, LsSolution};
pub use matrix::DenseMatrix;
pub use select::{ranked_indices, top_k, top_k_excluding};
pub use sparse::SparseVector;
