use serde::{Deserialize, Serialize};

use super::normality::symbol_normality_check;
use crate::error::Result;
use crate::hardy::{self_commutator_section, MatrixSymbol};
use crate::linalg::hermitian_eigenvalues;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Hyponormal,
    NotHyponormal,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyponormalityVerdict {
    pub verdict: Verdict,
    pub min_eigenvalue: f64,
    /// Eigenvalue of largest modulus, with its sign.
    pub dominant_eigenvalue: f64,
    pub tail_bound: f64,
    pub tolerance: f64,
    pub symbol_normal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatrixSymbol>,
}

/// Sign test on the self-commutator section.
///
/// With `tau = tol + tail`, the section is accepted as positive when its least
/// eigenvalue is at least `-tau` and rejected below `-(tau + 2 tail)`; the band
/// in between cannot be resolved at this section length. A non-normal symbol
/// is rejected outright, since hyponormality of a block Toeplitz operator with
/// rational symbol forces `Phi^* Phi = Phi Phi^*`.
pub fn hyponormal_psd_test(phi: &MatrixSymbol, len: usize, tol: f64) -> Result<HyponormalityVerdict> {
    let s = self_commutator_section(phi, len)?;
    let ev = hermitian_eigenvalues(&s.matrix);
    let min_eigenvalue = ev.first().copied().unwrap_or(0.0);
    let dominant_eigenvalue = ev.iter().copied().fold(0.0, |a: f64, b| if b.abs() > a.abs() { b } else { a });
    let symbol_normal = symbol_normality_check(phi)?.normal;
    let tail = s.tail_bound;
    let tau = tol + tail;
    let verdict = if !symbol_normal || min_eigenvalue < -(tau + 2.0 * tail) {
        Verdict::NotHyponormal
    } else if min_eigenvalue >= -tau {
        Verdict::Hyponormal
    } else {
        Verdict::Inconclusive
    };
    Ok(HyponormalityVerdict {
        verdict,
        min_eigenvalue,
        dominant_eigenvalue,
        tail_bound: tail,
        tolerance: tol,
        symbol_normal,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn zbar_plus(a: C) -> MatrixSymbol {
        MatrixSymbol::laurent(-1, &[C::new(1.0, 0.0), C::new(0.0, 0.0), a])
    }

    #[test]
    fn rank_one_family() {
        let r = hyponormal_psd_test(&zbar_plus(C::new(2.0, 0.0)), 8, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::Hyponormal);
        assert!(r.min_eigenvalue.abs() < 1e-12);
        assert!((r.dominant_eigenvalue - 3.0).abs() < 1e-12);

        let r = hyponormal_psd_test(&zbar_plus(C::new(0.5, 0.0)), 8, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::NotHyponormal);
        assert!((r.min_eigenvalue + 0.75).abs() < 1e-12);
    }

    #[test]
    fn verdict_serializes_snake_case() {
        assert_eq!(serde_json::to_string(&Verdict::NotHyponormal).unwrap(), "\"not_hyponormal\"");
    }
}
