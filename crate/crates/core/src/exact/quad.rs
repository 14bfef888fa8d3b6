//! Quadratic extensions ℚ(i)(√d) for a non-square `d ∈ ℚ(i)`.

use std::fmt;

use crate::exact::field::Field;
use crate::exact::scalar::QScalar;

/// `a + b·√d`. Elements built from ℚ(i) alone carry `d = 0` until they meet
/// an element that fixes the radicand.
#[derive(Clone)]
pub struct QuadScalar {
    a: QScalar,
    b: QScalar,
    d: QScalar,
}

impl QuadScalar {
    /// Panics if `d` is a square in ℚ(i); the quotient ring would not be a field.
    pub fn new(a: QScalar, b: QScalar, d: QScalar) -> Self {
        assert!(
            d.sqrt_exact().is_none(),
            "radicand {d} is a square in Q(i)"
        );
        QuadScalar { a, b, d }
    }

    /// `√d` itself.
    pub fn root(d: QScalar) -> Self {
        QuadScalar::new(QScalar::zero(), QScalar::one(), d)
    }

    pub fn rational_part(&self) -> &QScalar {
        &self.a
    }

    pub fn radical_part(&self) -> &QScalar {
        &self.b
    }

    /// The element as a member of ℚ(i), if it has no radical part.
    pub fn as_q(&self) -> Option<&QScalar> {
        self.b.is_zero().then_some(&self.a)
    }

    fn radicand(&self, o: &Self) -> QScalar {
        match (self.d.is_zero(), o.d.is_zero()) {
            (true, _) => o.d.clone(),
            (false, true) => self.d.clone(),
            (false, false) => {
                assert_eq!(self.d, o.d, "mixing different quadratic extensions");
                self.d.clone()
            }
        }
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({})+({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Field for QuadScalar {
    fn zero() -> Self {
        QuadScalar { a: QScalar::zero(), b: QScalar::zero(), d: QScalar::zero() }
    }
    fn one() -> Self {
        QuadScalar { a: QScalar::one(), b: QScalar::zero(), d: QScalar::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        QuadScalar { a: &self.a + &o.a, b: &self.b + &o.b, d: self.radicand(o) }
    }
    fn minus(&self, o: &Self) -> Self {
        QuadScalar { a: &self.a - &o.a, b: &self.b - &o.b, d: self.radicand(o) }
    }
    fn times(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        let bb = &self.b * &o.b;
        QuadScalar {
            a: &(&self.a * &o.a) + &(&bb * &d),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            d,
        }
    }
    fn negate(&self) -> Self {
        QuadScalar { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√d)(a − b√d) = a² − b²d, nonzero because d is not a square
        let n = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d);
        let ninv = n.inv()?;
        Some(QuadScalar { a: &self.a * &ninv, b: -(&self.b * &ninv), d: self.d.clone() })
    }
    /// Conjugates the coefficients and leaves `√d` fixed; meaningful for real positive `d`.
    fn conjugate(&self) -> Self {
        QuadScalar { a: self.a.conj(), b: self.b.conj(), d: self.d.clone() }
    }
    fn from_q(q: &QScalar) -> Self {
        QuadScalar { a: q.clone(), b: QScalar::zero(), d: QScalar::zero() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_arithmetic() {
        let s = QuadScalar::root(QScalar::from_int(2));
        assert_eq!(s.times(&s), QuadScalar::from_q(&QScalar::from_int(2)));
        let x = QuadScalar::one().plus(&s);
        assert_eq!(x.times(&x.recip().unwrap()), QuadScalar::one());
    }

    #[test]
    #[should_panic]
    fn square_radicand_rejected() {
        QuadScalar::root(QScalar::from_int(4));
    }
}
