use std::fmt::Debug;

use crate::exact::scalar::QScalar;

/// Exact field operations used by the generic elimination routines.
///
/// Implemented by ℚ(i) itself and by quadratic extensions of it.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    /// Complex conjugation on the ℚ(i) coefficients.
    fn conjugate(&self) -> Self;
    fn from_q(q: &QScalar) -> Self;
}
