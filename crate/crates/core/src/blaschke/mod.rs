//! Finite Blaschke products, Blaschke-Potapov products, model spaces and
//! coprimality with scalar inner multiples of the identity.

mod coprime;
mod finite;
mod model_space;
mod potapov;

pub use coprime::{hermite_witness, coprimality_test, HermiteWitness, CoprimalityVerdict, ZeroDeterminant};
pub use finite::{blaschke_lcm, scalar_coprime, FiniteBlaschke};
pub use model_space::{model_space_basis, ModelSpaceBasis};
pub use potapov::{potapov_inner_check, BlaschkePotapov, InnerCheck};
