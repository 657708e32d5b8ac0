//! Rigorous evaluation of Mahler-type series and Fibonacci-type reciprocal
//! sums, case classification for their exceptional parameter sets, and
//! lattice-based integer-relation checks.

pub mod classify;
pub mod error;
pub mod lattice;
pub mod lucaspair;
pub mod numerics;
pub mod periodic;
pub mod radix;
pub mod series;
pub mod suites;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
