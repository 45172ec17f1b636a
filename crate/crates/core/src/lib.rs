//! Numerical laboratory for block Toeplitz and Hankel operators with rational
//! symbols on the Hardy space of the unit circle.

pub mod blaschke;
pub mod criteria;
pub mod error;
pub mod hardy;
pub mod linalg;
pub mod rational;
pub mod shifts;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
