use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} is a pole of the gamma function")]
    Pole(Complex64),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("order {0} is a nonnegative integer; use the polynomial branch")]
    IntegerOrder(Complex64),

    #[error("arg z = {arg:.6} lies outside the requested sector {sector}")]
    SectorMismatch { sector: &'static str, arg: f64 },

    #[error("no asymptotic sector contains arg z = {0:.6}")]
    SectorGap(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fundamental system is numerically singular (|det| = {0:e})")]
    SingularSystem(f64),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("quadrature error: {0}")]
    Quadrature(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
