//! Threshold graphs: codes and recognition, exact counting, random generation,
//! limit measures on [0,1], degree statistics and Laplacian spectra.

pub mod bipartite;
pub mod counting;
pub mod error;
pub mod fixed;
pub mod graph;
pub mod io;
pub mod measures;
pub mod montecarlo;
pub mod real_dist;
pub mod rng;
pub mod samplers;
pub mod spectrum;
pub mod statistics;
pub mod validation;

pub use error::{Error, Result};
pub use graph::{BlockKind, BlockSequence, CreationCode, Encoding, ExtendedCode, Graph};
