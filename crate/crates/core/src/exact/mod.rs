//! Exact arithmetic over the Gaussian rationals and their quadratic extensions.

pub mod elim;
pub mod field;
pub mod float;
pub mod matrix;
pub mod modp;
pub mod quad;
pub mod scalar;

pub use elim::{inverse, is_pd_hermitian, is_psd_hermitian, kernel, psd_decompose, rank, rank_generic, rref, solve};
pub use field::Field;
pub use matrix::{Matrix, QMatrix};
pub use quad::QuadScalar;
pub use scalar::QScalar;
