//! Exact solver for the four-lines transversal problem on totally positive
//! configurations in RP^3, with certificates for the surrounding algebra.

pub mod arith;
pub mod cli;
pub mod curves;
pub mod error;
pub mod identity;
pub mod poly;
pub mod totalpos;
pub mod transversal;

pub use error::{Error, Result};
