//! Polynomials in derivatives of L-functions: degree calculus, controlled
//! evaluation, and zero counting by the argument principle.

pub mod analysis;
pub mod error;
pub mod expr;
pub mod lfuncs;
pub mod scaled;
pub mod zeros;

pub use error::{Error, Result};

/// Scalar type of every evaluation.
pub type Complex = num_complex::Complex64;
