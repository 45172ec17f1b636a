//! Decision procedures: symbol and operator normality, hyponormality,
//! divisibility of inner parts, the "normal or analytic" classification and
//! the rank-equals-degree check.

mod classify;
mod divisibility;
mod hyponormal;
mod nakazi;
mod normality;
mod coupled;
mod witness;

pub use classify::{
    classify, commutator_kernel_residual, Check, Checks, ClassificationReport, Conclusion, Evidence,
    KernelInvariance, INVARIANCE_TOL,
};
pub use divisibility::{divisibility_check, Divisibility};
pub use hyponormal::{hyponormal_psd_test, HyponormalityVerdict, Verdict};
pub use nakazi::{find_blaschke_witness, nakazi_takahashi_check, NakaziTakahashi};
pub use normality::{operator_normality_test, symbol_normality_check, OperatorNormality, SymbolNormality};
pub use coupled::{coupled_family, verify_coupled_family, PredictedVerdicts, CoupledFamily, CoupledFamilyReport};
pub use witness::{witness_certify, WitnessCertificate};
