use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("evaluation point {0} is a pole")]
    PoleAtEvaluationPoint(Complex64),
    #[error("root finding failed for a polynomial of degree {0}")]
    RootFindingFailure(usize),
    #[error("pole {0} lies within the unit-circle band")]
    PoleOnCircle(Complex64),
    #[error("inner function has degree zero")]
    DegreeZero,
    #[error("symbol is not analytic in the closed disk (pole at {0})")]
    NotAnalytic(Complex64),
    #[error("B({0}) is invertible; no interpolation witness exists")]
    WitnessNotNeeded(Complex64),
    #[error("Hankel kernel of this matrix symbol is not of the form theta*H^2")]
    NotReducible,
    #[error("rank tolerance {tol} is not above the section tail bound {tail}")]
    ToleranceBelowTailBound { tol: f64, tail: f64 },
    #[error("guard {guard} is smaller than the symbol bandwidth {bandwidth}")]
    GuardTooSmall { guard: usize, bandwidth: usize },
    #[error("supplied Blaschke product is not in E(phi): {0}")]
    WitnessRejected(String),
    #[error("alpha = {0} is outside (0, 1)")]
    AlphaOutOfRange(f64),
    #[error("{needed} moments needed, {available} available")]
    InsufficientMoments { needed: usize, available: usize },
    #[error("invalid Blaschke product: {0}")]
    InvalidBlaschke(String),
    #[error("invalid Blaschke-Potapov product: {0}")]
    InvalidPotapov(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Errors caused by malformed input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroDenominator
                | Error::InvalidBlaschke(_)
                | Error::InvalidPotapov(_)
                | Error::DimensionMismatch(_)
                | Error::InvalidInput(_)
                | Error::AlphaOutOfRange(_)
                | Error::InsufficientMoments { .. }
                | Error::DegreeZero
                | Error::NotAnalytic(_)
        )
    }
}
