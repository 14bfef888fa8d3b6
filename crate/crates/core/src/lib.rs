//! Exact certification of zero-error capacity positivity for finite-dimensional
//! quantum channels, via rank-one elements of operator subspaces.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub use exact::{Matrix, QMatrix, QScalar};
pub mod subspace;
pub mod constructions;
pub mod rank1;
pub mod channel;
pub mod gaussian;
pub mod zeroerr;
pub mod cli;
