//! Exact algorithms for linear difference systems over rational function
//! fields with parameters.

pub mod error;
pub mod expr;
pub mod field;
pub mod galois;
pub mod io;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod multlattice;
pub mod diffsys;
pub mod ore;
pub mod specialize;

pub use error::{DgtError, Result};
