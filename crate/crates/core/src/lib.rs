//! Exact enumerative combinatorics of generalized jump paths on integer
//! lattices: closed-form and recurrence counts, a brute-force enumeration
//! oracle, path-length generating functions, the planar decomposition
//! sequence, and exact path-length distributions checked against their
//! Gaussian limit.

pub mod error;
pub mod exactmath;
pub mod cli;
pub mod cltlab;
pub mod enumerate;
pub mod genfunc;
pub mod pathcount;
pub mod strategy;
pub mod verify;
pub mod zeckseq;

pub use error::{Error, Result};
