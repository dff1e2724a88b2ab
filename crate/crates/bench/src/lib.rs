//! Seeded experiment harness for the `sparse-recovery` crate: phase
//! transitions, recovery trends, noise and iteration studies, Kaczmarz
//! horizons, reweighted-ℓ1 bounds and restricted isometry constants.

pub mod algo;
pub mod config;
pub mod error;
pub mod experiments;
pub mod io;
pub mod output;

pub use algo::Algorithm;
pub use error::{BenchError, BenchResult};
pub use output::{Cell, Format, Table};
