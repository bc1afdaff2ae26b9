//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("component at {what} must be nonzero")]
    ZeroComponent { what: String },

    #[error("value table is not multiplicative on (Z/{modulus})^x")]
    NonMultiplicativeTable { modulus: u64 },

    #[error("character mod {modulus} is not primitive (conductor {conductor})")]
    ImprimitiveCharacter { modulus: u64, conductor: u64 },

    #[error("character mod {modulus} is principal")]
    PrincipalCharacter { modulus: u64 },

    #[error("character index {index} out of range for modulus {modulus} ({count} characters)")]
    CharacterIndex {
        modulus: u64,
        index: usize,
        count: usize,
    },

    #[error("gamma pole at {location}")]
    GammaPole { location: Complex64 },

    #[error("integral diverges: {reason}")]
    Divergent { reason: String },

    #[error("out of domain: {reason}")]
    OutOfDomain { reason: String },

    #[error("numerical non-convergence: {what} did not reach tolerance {tol:e}")]
    NonConvergence { what: String, tol: f64 },

    #[error("singular point: local factor vanishes at s = {location}")]
    SingularPoint { location: Complex64 },

    #[error("unsupported input: {reason}")]
    Unsupported { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
