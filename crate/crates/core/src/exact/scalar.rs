//! Gaussian rationals `a + b i` with `a, b ∈ ℚ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exact::field::Field;

/// An exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QScalar {
    re: BigRational,
    im: BigRational,
}

impl QScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QScalar { re, im }
    }

    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn i() -> Self {
        QScalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num / den` as a real scalar. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        QScalar::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        QScalar::new(r, BigRational::zero())
    }

    /// `re + im·i` from small integers.
    pub fn gauss(re: i64, im: i64) -> Self {
        QScalar::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QScalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|re| + |im|`, a rational upper bound for `|z|`.
    pub fn abs_bound(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(QScalar::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Sign of the real part when the scalar is real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.im.is_zero() {
            Some(self.re.cmp(&BigRational::zero()))
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact square root inside ℚ(i), when one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(QScalar::zero());
        }
        if self.im.is_zero() {
            let r = rational_sqrt(&self.re.abs())?;
            return Some(if self.re.is_negative() {
                QScalar::new(BigRational::zero(), r)
            } else {
                QScalar::from_rational(r)
            });
        }
        // (u + vi)² = p + qi  with  u² = (p + |z|)/2,  v = q / 2u.
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let u = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        let root = QScalar::new(u, v);
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }

    /// Canonical text form: `RAT`, `RAT"i"`, or `RAT SIGN RAT "i"` with unit
    /// imaginary coefficients written as a bare `i`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.im.is_zero() {
            write_rat(&mut out, &self.re);
            return out;
        }
        if !self.re.is_zero() {
            write_rat(&mut out, &self.re);
            out.push(if self.im.is_negative() { '-' } else { '+' });
            let mag = self.im.abs();
            if !mag.is_one() {
                write_rat(&mut out, &mag);
            }
        } else if self.im.is_one() {
        } else if (-self.im.clone()).is_one() {
            out.push('-');
        } else {
            write_rat(&mut out, &self.im);
        }
        out.push('i');
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        parse_cpx(text).ok_or_else(|| Error::Parse(format!("invalid scalar {text:?}")))
    }
}

fn write_rat(out: &mut String, r: &BigRational) {
    out.push_str(&r.numer().to_string());
    if !r.denom().is_one() {
        out.push('/');
        out.push_str(&r.denom().to_string());
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

fn parse_rat(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => parse_int(s).map(BigRational::from_integer),
        Some((n, d)) => {
            let n = parse_int(n)?;
            if d.starts_with('-') {
                return None;
            }
            let d = parse_int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
    }
}

/// Coefficient in front of `i`: empty means 1, `-` means −1.
fn parse_imag_coeff(s: &str) -> Option<BigRational> {
    match s {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rat(s.strip_prefix('+').unwrap_or(s)),
    }
}

fn parse_cpx(text: &str) -> Option<QScalar> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_rat(s).map(QScalar::from_rational);
    };
    // split at the last sign that is not the leading character
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(k, _)| k)
        .last();
    match split {
        Some(k) => {
            let re = parse_rat(&body[..k])?;
            let im = parse_imag_coeff(&body[k..])?;
            Some(QScalar::new(re, im))
        }
        None => parse_imag_coeff(body).map(|im| QScalar::new(BigRational::zero(), im)),
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        QScalar::parse(s)
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        QScalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        QScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        if o.is_zero() {
            return self.clone();
        }
        QScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return QScalar::from_rational(&self.re * &o.re);
        }
        QScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    /// Panics on division by zero.
    fn div(self, o: &QScalar) -> QScalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::new(-self.re, -self.im)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, o: QScalar) -> QScalar {
                (&self).$method(&o)
            }
        }
        impl<'a> $trait<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, o: &QScalar) -> QScalar {
                (&self).$method(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        if o.is_zero() {
            return;
        }
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        if o.is_zero() {
            return;
        }
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, o: &QScalar) {
        *self = &*self * o;
    }
}

impl Field for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        self.inv()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_q(q: &QScalar) -> Self {
        q.clone()
    }
}

/// Gaussian integer used by fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn div_exact(&self, o: &GaussInt) -> Option<GaussInt> {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussInt { re: qr, im: qi })
        } else {
            None
        }
    }
}

/// Scale a row of Gaussian rationals to Gaussian integers by the lcm of its denominators.
pub(crate) fn integral_row(row: &[QScalar]) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.re.denom());
        l = l.lcm(x.im.denom());
    }
    row.iter()
        .map(|x| GaussInt {
            re: x.re.numer() * (&l / x.re.denom()),
            im: x.im.numer() * (&l / x.im.denom()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_examples() {
        for s in ["3/2-1/2i", "i", "0", "-i", "1+i", "-7/3", "5i", "-1/2i", "2-i"] {
            let q = QScalar::parse(s).unwrap();
            assert_eq!(q.to_text(), s, "{s}");
        }
        assert_eq!(QScalar::parse("3/2-1/2i").unwrap(), &QScalar::frac(3, 2) - &(&QScalar::frac(1, 2) * &QScalar::i()));
        assert_eq!(QScalar::parse("4/6").unwrap().to_text(), "2/3");
    }

    #[test]
    fn malformed_scalars_rejected() {
        for s in ["", "1/0", "abc", "1/-2", "++1", "1+2", "i1", "1//2"] {
            assert!(QScalar::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn field_identities() {
        let a = QScalar::parse("3/2-1/2i").unwrap();
        let b = QScalar::parse("-2+5/3i").unwrap();
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), QScalar::one());
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a * &a.conj()).im().clone(), BigRational::zero());
    }

    #[test]
    fn exact_square_roots() {
        let z = QScalar::parse("2i").unwrap();
        let r = z.sqrt_exact().unwrap();
        assert_eq!(&r * &r, z);
        assert_eq!(QScalar::from_int(-4).sqrt_exact().unwrap(), QScalar::gauss(0, 2));
        assert!(QScalar::from_int(2).sqrt_exact().is_none());
        assert!(QScalar::i().sqrt_exact().is_none());
    }

    #[test]
    fn gauss_int_exact_division() {
        let a = GaussInt { re: 3.into(), im: 4.into() };
        let b = GaussInt { re: 1.into(), im: 2.into() };
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&GaussInt { re: 2.into(), im: 0.into() }).is_none());
    }
}
