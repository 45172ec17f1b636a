//! Scalar rational functions on the unit circle.

mod function;
mod poly;
mod roots;

pub use function::{Decay, PoleTerm, PrincipalPartDecomposition, RationalFunction, SupNorm};
pub use poly::Polynomial;
pub use roots::clustered_roots;
