//! Error type shared by every fallible operation in the crate.

use std::fmt;

/// Structured failure modes for numerical operations.
///
/// Each variant carries a human-readable message; [`Error::kind`] returns a
/// stable machine-readable tag used by the CLI's JSON error output.
#[derive(Debug)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    DomainError(String),
    /// Evaluation was requested exactly at (or too close to) a pole.
    PoleError(String),
    /// The evaluation point is so close to a zero of a prefactor or
    /// denominator that the result would lose more than half the mantissa.
    ConditioningError(String),
    /// Adaptive quadrature exhausted its node budget before converging.
    QuadratureError(String),
    /// The configured precision is insufficient for the requested expansion
    /// depth (catastrophic cancellation would consume the whole mantissa).
    PrecisionError(String),
    /// An interpolation argument coincides with one of the integer nodes
    /// where the transform's defining expression degenerates.
    ForbiddenNodeError(String),
    /// A series supplied as Taylor coefficients did not converge within the
    /// coefficients provided.
    ConvergenceError(String),
    /// The beta parameter of a reflection identity was an integer, where the
    /// closed form degenerates.
    IntegerBetaError(String),
    /// A root-solving routine requires all offsets on one side of the line of
    /// symmetry, but the input mixed signs.
    HypothesisError(String),
    /// A bracketing step failed to isolate a sign change.
    BracketError(String),
    /// A root search found a different number of roots than the structure of
    /// the polynomial demands.
    RootCountError(String),
    /// A polynomial expected to have real roots (in the searched range) has
    /// complex ones, so a real-root listing cannot be completed.
    ComplexRootFinding(String),
    /// An exact linear system for annihilating weights was singular or
    /// inconsistent.
    SingularSystemError(String),
    /// The requested precision is below the supported minimum.
    InvalidPrecision(String),
    /// A structural parameter (term count, order, index set, ...) is invalid.
    InvalidParam(String),
}

impl Error {
    /// Stable machine-readable tag naming the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainError(_) => "DomainError",
            Error::PoleError(_) => "PoleError",
            Error::ConditioningError(_) => "ConditioningError",
            Error::QuadratureError(_) => "QuadratureError",
            Error::PrecisionError(_) => "PrecisionError",
            Error::ForbiddenNodeError(_) => "ForbiddenNodeError",
            Error::ConvergenceError(_) => "ConvergenceError",
            Error::IntegerBetaError(_) => "IntegerBetaError",
            Error::HypothesisError(_) => "HypothesisError",
            Error::BracketError(_) => "BracketError",
            Error::RootCountError(_) => "RootCountError",
            Error::ComplexRootFinding(_) => "ComplexRootFinding",
            Error::SingularSystemError(_) => "SingularSystemError",
            Error::InvalidPrecision(_) => "InvalidPrecision",
            Error::InvalidParam(_) => "InvalidParam",
        }
    }

    /// The human-readable message.
    pub fn message(&self) -> &str {
        match self {
            Error::DomainError(m)
            | Error::PoleError(m)
            | Error::ConditioningError(m)
            | Error::QuadratureError(m)
            | Error::PrecisionError(m)
            | Error::ForbiddenNodeError(m)
            | Error::ConvergenceError(m)
            | Error::IntegerBetaError(m)
            | Error::HypothesisError(m)
            | Error::BracketError(m)
            | Error::RootCountError(m)
            | Error::ComplexRootFinding(m)
            | Error::SingularSystemError(m)
            | Error::InvalidPrecision(m)
            | Error::InvalidParam(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for Error {}
