//! Schur-basis state preparation: representation-theory primitives, the
//! Fock-to-Schur label map, a dense state simulator and a fault-tolerant
//! resource estimator.

pub mod error;
pub mod estimate;
pub mod fock;
pub mod repr;
pub mod sim;
pub mod sweep;

pub use error::{Error, Result};
