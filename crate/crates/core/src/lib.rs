//! Scattering, impulse responses and graph pruning for discrete-time quantum
//! walks on finite graphs with attached runways.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod prune;
pub mod response;
pub mod scatter;
pub mod sounding;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64;
