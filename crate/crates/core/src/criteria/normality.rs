use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hardy::{self_commutator_section, MatrixSymbol};
use crate::linalg::op_norm;

const SAMPLES: usize = 64;
const SYMBOL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolNormality {
    pub normal: bool,
    /// Largest `||Phi^* Phi - Phi Phi^*||` over the circle samples.
    pub sample_defect: f64,
    /// Largest relative numerator coefficient of the entries of
    /// `Phi^* Phi - Phi Phi^*` formed in rational arithmetic.
    pub coefficient_defect: f64,
}

pub fn symbol_normality_check(phi: &MatrixSymbol) -> Result<SymbolNormality> {
    let mut sample_defect: f64 = 0.0;
    for i in 0..SAMPLES {
        let v = phi.on_circle(std::f64::consts::TAU * (i as f64 + 0.5) / SAMPLES as f64);
        let d = v.adjoint() * &v - &v * v.adjoint();
        sample_defect = sample_defect.max(op_norm(&d));
    }
    let adj = phi.adjoint();
    let left = adj.mul(phi)?;
    let right = phi.mul(&adj)?;
    let diff = left.sub(&right)?;
    let mut coefficient_defect: f64 = 0.0;
    for ((d, l), r) in diff.entries().iter().zip(left.entries()).zip(right.entries()) {
        let scale = 1.0 + l.num().max_abs_coeff().max(r.num().max_abs_coeff());
        coefficient_defect = coefficient_defect.max(d.num().max_abs_coeff() / scale);
    }
    Ok(SymbolNormality {
        normal: sample_defect <= SYMBOL_TOL && coefficient_defect <= SYMBOL_TOL,
        sample_defect,
        coefficient_defect,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorNormality {
    pub normal: bool,
    pub commutator_norm: f64,
    pub tail_bound: f64,
}

/// `T_Phi` is normal iff the self-commutator section vanishes up to
/// `tol + tail_bound`.
pub fn operator_normality_test(phi: &MatrixSymbol, len: usize, tol: f64) -> Result<OperatorNormality> {
    let s = self_commutator_section(phi, len)?;
    let commutator_norm = op_norm(&s.matrix);
    Ok(OperatorNormality {
        normal: commutator_norm <= tol + s.tail_bound,
        commutator_norm,
        tail_bound: s.tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::RationalFunction;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn symbol_examples() {
        let scalar = MatrixSymbol::laurent(-1, &[c(1.0, 0.0), c(0.0, 0.0), c(0.3, 0.2)]);
        let r = symbol_normality_check(&scalar).unwrap();
        assert!(r.normal && r.sample_defect == 0.0);

        let z = RationalFunction::monomial(c(1.0, 0.0), 1);
        let one = RationalFunction::constant(c(1.0, 0.0));
        let jordan =
            MatrixSymbol::from_rows(vec![vec![z.clone(), one], vec![RationalFunction::zero(), z]]).unwrap();
        let r = symbol_normality_check(&jordan).unwrap();
        assert!(!r.normal);
        assert!((r.sample_defect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn operator_examples() {
        let selfadj = MatrixSymbol::laurent(-1, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(operator_normality_test(&selfadj, 8, 1e-8).unwrap().normal);

        // conj(f) + e^{i pi/3} f with f = 0.3 z + 0.1 z^2
        let w = C::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let phi = MatrixSymbol::laurent(-2, &[c(0.1, 0.0), c(0.3, 0.0), c(0.0, 0.0), w * 0.3, w * 0.1]);
        assert!(operator_normality_test(&phi, 8, 1e-8).unwrap().normal);

        let r = operator_normality_test(&MatrixSymbol::laurent(-1, &[c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]), 8, 1e-8)
            .unwrap();
        assert!(!r.normal);
        assert!((r.commutator_norm - 3.0).abs() < 1e-12);
    }
}
