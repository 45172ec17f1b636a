use num_complex::Complex64;

use super::finite::FiniteBlaschke;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::rational::{Polynomial, RationalFunction};

type C = Complex64;

/// Takenaka-Malmquist orthonormal basis of `H^2 (-) theta H^2`:
/// `g_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}`.
#[derive(Clone, Debug)]
pub struct ModelSpaceBasis {
    pub theta: FiniteBlaschke,
    pub basis: Vec<RationalFunction>,
}

pub fn model_space_basis(theta: &FiniteBlaschke) -> Result<ModelSpaceBasis> {
    if theta.is_constant() {
        return Err(Error::DegreeZero);
    }
    let zeros = theta.zero_sequence();
    let mut basis = Vec::with_capacity(zeros.len());
    let mut prefix = FiniteBlaschke::power_of_z(0);
    for &a in &zeros {
        let kernel = if a == C::new(0.0, 0.0) {
            RationalFunction::constant(C::new(1.0, 0.0))
        } else {
            // 1 / (1 - conj(a) z) = (-1 / conj(a)) / (z - 1 / conj(a))
            RationalFunction::from_parts(
                Polynomial::constant(-C::new(1.0, 0.0) / a.conj()),
                vec![(C::new(1.0, 0.0) / a.conj(), 1)],
            )
        };
        let g = kernel.mul(&prefix.to_rational()).scale(C::new((1.0 - a.norm_sqr()).sqrt(), 0.0));
        basis.push(g);
        prefix = prefix.mul(&FiniteBlaschke::factor(a).expect("zero inside the disk"));
    }
    Ok(ModelSpaceBasis { theta: theta.clone(), basis })
}

impl ModelSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `len x d` matrix of Taylor coefficients of the basis functions.
    pub fn coefficient_matrix(&self, len: usize) -> CMatrix {
        let mut m = CMatrix::zeros(len, self.dim());
        for (k, g) in self.basis.iter().enumerate() {
            for j in 0..len {
                m[(j, k)] = g.coeff(j as i64);
            }
        }
        m
    }

    /// Truncation of the orthogonal projection onto the model space to
    /// polynomials of degree `< len`.
    pub fn projector(&self, len: usize) -> CMatrix {
        let g = self.coefficient_matrix(len);
        &g * g.adjoint()
    }

    /// `<h, g_k>` for a polynomial `h`; exact because `h` has finite support.
    pub fn coordinates(&self, h: &Polynomial) -> Vec<C> {
        self.basis
            .iter()
            .map(|g| {
                h.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, &hj)| hj * g.coeff(j as i64).conj())
                    .sum()
            })
            .collect()
    }
}
