//! The family `Phi = [[2 theta + conj(theta), conj(theta)], [conj(theta), 2 theta + conj(theta)]]`:
//! normal symbol, hyponormal operator with invariant commutator kernel, yet
//! neither normal nor analytic because `B = [[1, 1], [1, 1]]` is singular at
//! every zero of `theta`.

use num_complex::Complex64;
use serde::Serialize;

use super::classify::{commutator_kernel_residual, KernelInvariance};
use super::normality::{operator_normality_test, symbol_normality_check};
use super::witness::witness_certify;
use crate::blaschke::{model_space_basis, FiniteBlaschke, ModelSpaceBasis};
use crate::error::Result;
use crate::hardy::{numerical_rank_and_kernel, self_commutator_section, MatrixSymbol};
use crate::linalg::{hermitian_eigenvalues, op_norm, CMatrix};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedVerdicts {
    pub hyponormal: bool,
    pub kernel_invariant: bool,
    pub normal: bool,
    pub analytic: bool,
}

#[derive(Clone, Debug)]
pub struct CoupledFamily {
    pub theta: FiniteBlaschke,
    pub symbol: MatrixSymbol,
    pub basis: ModelSpaceBasis,
    pub predicted: PredictedVerdicts,
}

pub fn coupled_family(theta: &FiniteBlaschke) -> Result<CoupledFamily> {
    let basis = model_space_basis(theta)?;
    let t = theta.to_rational();
    let tb = t.circle_adjoint();
    let diag = t.scale(C::new(2.0, 0.0)).add(&tb);
    let symbol = MatrixSymbol::from_rows(vec![vec![diag.clone(), tb.clone()], vec![tb, diag]])?;
    Ok(CoupledFamily {
        theta: theta.clone(),
        symbol,
        basis,
        predicted: PredictedVerdicts { hyponormal: true, kernel_invariant: true, normal: false, analytic: false },
    })
}

fn sign(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        -1.0
    }
}

impl CoupledFamily {
    /// `K = (1/2) [[1, 1], [1, 1]]`.
    pub fn witness() -> MatrixSymbol {
        MatrixSymbol::constant(&CMatrix::from_element(2, 2, C::new(0.5, 0.0))).expect("square")
    }

    /// `2 [[P, -P], [-P, P]]` with `P` the model-space projection, in the
    /// block-major layout of the sections.
    pub fn predicted_commutator(&self, len: usize) -> CMatrix {
        let p = self.basis.projector(len);
        CMatrix::from_fn(2 * len, 2 * len, |r, c| p[(r / 2, c / 2)] * (2.0 * sign(r % 2, c % 2)))
    }

    /// Projection onto `Theta H^2 (+) {f (+) f : f in H_theta}`, i.e.
    /// `I - (1/2) [[P, -P], [-P, P]]`.
    pub fn predicted_kernel_projector(&self, len: usize) -> CMatrix {
        CMatrix::identity(2 * len, 2 * len) - self.predicted_commutator(len) * C::new(0.25, 0.0)
    }

    pub fn predicted_rank(&self) -> usize {
        self.theta.degree()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoupledFamilyReport {
    pub degree: usize,
    pub section_length: usize,
    pub commutator_error: f64,
    pub kernel_projector_error: f64,
    pub top_eigenvalue: f64,
    pub rank: usize,
    pub invariance: KernelInvariance,
    pub symbol_normality_defect: f64,
    pub operator_normal: bool,
    pub witness_certified: bool,
    pub predicted: PredictedVerdicts,
    pub matches_prediction: bool,
}

/// End-to-end comparison of the computed sections with the predictions.
pub fn verify_coupled_family(theta: &FiniteBlaschke, len: usize, tol: f64) -> Result<CoupledFamilyReport> {
    let fam = coupled_family(theta)?;
    let s = self_commutator_section(&fam.symbol, len)?;
    let commutator_error = op_norm(&(&s.matrix - fam.predicted_commutator(len)));
    let rk = numerical_rank_and_kernel(&s, tol.max(2.0 * s.tail_bound))?;
    let k = &rk.kernel;
    let kernel_projector_error = op_norm(&(k * k.adjoint() - fam.predicted_kernel_projector(len)));
    let top_eigenvalue = hermitian_eigenvalues(&s.matrix).last().copied().unwrap_or(0.0);
    let invariance = commutator_kernel_residual(&fam.symbol, len, tol)?;
    let sn = symbol_normality_check(&fam.symbol)?;
    let on = operator_normality_test(&fam.symbol, len, tol)?;
    let wc = witness_certify(&fam.symbol, &CoupledFamily::witness())?;
    let matches_prediction = commutator_error <= 1e-7
        && invariance.residual <= 1e-7
        && sn.normal
        && !on.normal
        && wc.certified
        && rk.rank == fam.predicted_rank();
    Ok(CoupledFamilyReport {
        degree: theta.degree(),
        section_length: len,
        commutator_error,
        kernel_projector_error,
        top_eigenvalue,
        rank: rk.rank,
        invariance,
        symbol_normality_defect: sn.sample_defect.max(sn.coefficient_defect),
        operator_normal: on.normal,
        witness_certified: wc.certified,
        predicted: fam.predicted,
        matches_prediction,
    })
}
