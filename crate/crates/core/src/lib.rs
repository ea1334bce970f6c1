//! Laplacian pair state transfer on total graphs of regular graphs.

pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod pair;
pub mod pgst;
pub mod pst;
pub mod report;
pub mod spectral;
pub mod theorem;

pub use error::{Error, Result};
