pub mod eigen;
pub mod error;
pub mod resolvent;
pub mod spectrum;
pub mod specfun;

pub use error::{Error, Result};
