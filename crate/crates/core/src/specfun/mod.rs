//! Special functions: complex gamma and Hermite functions of complex order.

pub mod corpus;
mod dd;
pub mod gamma;
pub mod hermite;

pub use corpus::{parse_corpus, write_corpus, OracleRecord};
pub use gamma::{gamma, log_gamma, rgamma, sin_pi};
pub use hermite::{
    hermite_int, hermite_nu, hermite_nu_asymptotic, hermite_nu_expansion, hermite_nu_series,
    hermite_nu_series_capped, hermite_value, switch_radius, ComplexOrder, EvalResult, SectorTag,
};
