use serde::{Deserialize, Serialize};

use super::hyponormal::{hyponormal_psd_test, Verdict};
use super::normality::operator_normality_test;
use crate::blaschke::coprimality_test;
use crate::error::Result;
use crate::hardy::{invariance_residual, self_commutator_section, supported_kernel, toeplitz_section, MatrixSymbol};
use crate::linalg::op_norm;

/// Residual above which the commutator kernel is not treated as invariant.
pub const INVARIANCE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelInvariance {
    pub residual: f64,
    pub guard: usize,
    pub kernel_dim: usize,
    pub tail_bound: f64,
}

/// Invariance of the self-commutator kernel under `T_Phi` at section length
/// `len`, using kernel vectors supported away from the truncation edge.
pub fn commutator_kernel_residual(phi: &MatrixSymbol, len: usize, tol: f64) -> Result<KernelInvariance> {
    let s = self_commutator_section(phi, len)?;
    let t = toeplitz_section(phi, len)?;
    let guard = t.bandwidth.max(2);
    let cutoff = tol * op_norm(&s.matrix).max(1.0) + s.tail_bound;
    let v = supported_kernel(&s, guard, cutoff);
    let residual = invariance_residual(&v, &s, &t, guard, cutoff)?;
    Ok(KernelInvariance { residual, guard, kernel_dim: v.ncols(), tail_bound: s.tail_bound + t.tail_bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Normal,
    Analytic,
    HypothesesViolated,
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub rationality: Check,
    pub coprimality: Check,
    pub hyponormality: Check,
    pub kernel_invariance: Check,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub min_eig: f64,
    pub tail: f64,
    pub rank: usize,
    pub residual: f64,
    pub guard: usize,
    pub section_length: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub checks: Checks,
    pub conclusion: Conclusion,
    pub evidence: Evidence,
}

/// Check every hypothesis under which a hyponormal symbol must be normal or
/// analytic, and decide which branch holds. Analytic symbols are reported as
/// such before any hypothesis is consulted.
pub fn classify(phi: &MatrixSymbol, len: usize, tol: f64) -> Result<ClassificationReport> {
    let rationality = Check {
        pass: true,
        detail: format!("{0}x{0} rational symbol, no pole within the circle band", phi.n()),
    };

    let theta = phi.coanalytic_inner()?;
    let b = phi.coanalytic_cofactor(&theta);
    let copr = coprimality_test(&b, &theta)?;
    let coprimality = Check {
        pass: copr.coprime,
        detail: if copr.coprime {
            format!("B invertible at the {} zero(s) of theta", theta.zeros().len())
        } else {
            format!("B singular at {:?}", copr.failing)
        },
    };

    let hyp = hyponormal_psd_test(phi, len, tol)?;
    let hyponormality = Check {
        pass: hyp.verdict == Verdict::Hyponormal,
        detail: format!("{:?}, min eigenvalue {:.3e}", hyp.verdict, hyp.min_eigenvalue),
    };

    let inv = commutator_kernel_residual(phi, len, tol)?;
    let kernel_invariance = Check {
        pass: inv.residual <= INVARIANCE_TOL + inv.tail_bound,
        detail: format!("residual {:.3e} with guard {}", inv.residual, inv.guard),
    };

    let s = self_commutator_section(phi, len)?;
    let smax = op_norm(&s.matrix);
    let rank = s
        .matrix
        .singular_values()
        .iter()
        .filter(|&&x| x > tol * smax.max(1.0) + s.tail_bound)
        .count();

    let checks = Checks { rationality, coprimality, hyponormality, kernel_invariance };
    let all_pass =
        checks.rationality.pass && checks.coprimality.pass && checks.hyponormality.pass && checks.kernel_invariance.pass;
    let conclusion = if phi.is_analytic() {
        Conclusion::Analytic
    } else if !all_pass {
        Conclusion::HypothesesViolated
    } else if operator_normality_test(phi, len, tol)?.normal {
        Conclusion::Normal
    } else {
        Conclusion::Contradiction
    };
    Ok(ClassificationReport {
        checks,
        conclusion,
        evidence: Evidence {
            min_eig: hyp.min_eigenvalue,
            tail: hyp.tail_bound,
            rank,
            residual: inv.residual,
            guard: inv.guard,
            section_length: len,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn branches() {
        let poly = MatrixSymbol::laurent(0, &[c(1.0), c(2.0), c(0.5)]);
        assert_eq!(classify(&poly, 12, 1e-8).unwrap().conclusion, Conclusion::Analytic);

        let w = C::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let normal = MatrixSymbol::laurent(-1, &[c(1.0), c(0.0), w]);
        let r = classify(&normal, 12, 1e-8).unwrap();
        assert_eq!(r.conclusion, Conclusion::Normal, "{r:?}");

        let bad = MatrixSymbol::laurent(-2, &[c(1.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(classify(&bad, 12, 1e-8).unwrap().conclusion, Conclusion::HypothesesViolated);
    }
}
