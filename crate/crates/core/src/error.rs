use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant is a domain error: the input was well formed but the
/// requested construction does not exist for it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument of zero undefined")]
    ArgumentOfZero,

    #[error("p_zero: use acm_p_zero (|p| = {modulus:e} is below the threshold {threshold:e})")]
    PZero { modulus: f64, threshold: f64 },

    #[error("not Hermitian-admissible: discriminant {discriminant:e} > 0")]
    NotHermitianAdmissible { discriminant: f64 },

    #[error("coefficients are all real: use roots_real")]
    UseRootsReal,

    #[error("complex coefficients where real ones are required")]
    ComplexInput,

    #[error("inadmissible density polynomial: {0}")]
    Inadmissible(crate::density::Violation),

    #[error("parameter `{name}` = {value} out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("polynomial degree must be at least 1")]
    EmptyPolynomial,

    #[error("root iteration did not converge after {iterations} iterations ({restarts} restarts)")]
    NoConvergence { iterations: usize, restarts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
