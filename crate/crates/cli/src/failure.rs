//! Exit-code contract: 0 success, 1 numerical failure, 2 invalid input.

use std::fmt;

/// Input rejected before any computation.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    use hubble_core::Error as E;
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Invalid(_)
                | E::Config(_)
                | E::Grid(_)
                | E::Resource(_)
                | E::Domain(_)
                | E::IntegerOrder(_)
                | E::SectorMismatch { .. } => 2,
                E::Pole(_)
                | E::NonConvergence { .. }
                | E::SectorGap(_)
                | E::SingularSystem(_)
                | E::Quadrature(_) => 1,
            };
        }
    }
    1
}
