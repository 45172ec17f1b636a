use serde::Serialize;

use crate::blaschke::FiniteBlaschke;
use crate::error::Result;
use crate::hardy::MatrixSymbol;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Divisibility {
    pub divisible: bool,
    /// Inner part of `Phi_plus`, `Phi_plus = theta_1 A^*`.
    pub theta1: FiniteBlaschke,
    /// Inner part of `Phi_minus`, `Phi_minus = theta_2 B^*`.
    pub theta2: FiniteBlaschke,
}

/// `theta_2` divides `theta_1`, a necessary condition for hyponormality.
///
/// `theta_1` collects the poles inside the disk of the reflected analytic
/// entries `conj(phi_plus)`, so a polynomial part of degree `k` contributes a
/// zero of order `k` at the origin.
pub fn divisibility_check(phi: &MatrixSymbol) -> Result<Divisibility> {
    let theta2 = phi.coanalytic_inner()?;
    let n = phi.n();
    let mut theta1 = FiniteBlaschke::power_of_z(0);
    for i in 0..n {
        for j in 0..n {
            let reflected = phi.plus_entry(i, j).circle_adjoint();
            theta1 = theta1.lcm(&FiniteBlaschke::from_inner_poles(&reflected)?);
        }
    }
    Ok(Divisibility { divisible: theta2.divides(&theta1), theta1, theta2 })
}
