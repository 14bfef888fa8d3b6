//! Rank of Gaussian-rational vectors reduced modulo a prime `p ≡ 1 (mod 4)`.
//!
//! Reduction is a ring map on the `p`-integral part of ℚ(i), so the rank mod `p`
//! never exceeds the rank over ℚ(i). A full rank mod `p` is therefore exact proof of
//! full rank; anything less proves nothing.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::QScalar;

const P: u64 = 998_244_353;

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn inv(x: u64) -> u64 {
    pow(x, P - 2)
}

/// A square root of −1 mod `P` (3 generates the multiplicative group).
fn sqrt_minus_one() -> u64 {
    pow(3, (P - 1) / 4)
}

fn reduce_int(x: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

fn reduce_rational(x: &num_rational::BigRational) -> Option<u64> {
    let d = reduce_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(reduce_int(x.numer()) * inv(d) % P)
}

fn reduce(x: &QScalar, i: u64) -> Option<u64> {
    if x.is_zero() {
        return Some(0);
    }
    let (a, b) = (reduce_rational(x.re())?, reduce_rational(x.im())?);
    Some((a + b * i) % P)
}

/// Rank mod `P`, or `None` if some entry has a denominator divisible by `P`.
pub fn rank_mod_p(rows: &[Vec<QScalar>]) -> Option<usize> {
    let i = sqrt_minus_one();
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| reduce(x, i)).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let s = inv(m[rank][c]);
        let pivot: Vec<u64> = m[rank].iter().map(|x| x * s % P).collect();
        for r in rank + 1..m.len() {
            let f = m[r][c];
            if f != 0 {
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x + P - f * y % P) % P;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squares_to_minus_one() {
        let i = sqrt_minus_one();
        assert_eq!(i * i % P, P - 1);
    }

    #[test]
    fn known_dependency() {
        let q = QScalar::gauss;
        let (r1, r2) = (vec![q(1, 1), q(0, 2), q(3, 0)], vec![q(0, 1), q(-1, 1), q(2, -5)]);
        let r3: Vec<QScalar> = r1.iter().zip(&r2).map(|(a, b)| a + &(&QScalar::i() * b)).collect();
        assert_eq!(rank_mod_p(&[r1.clone(), r2.clone()]), Some(2));
        assert_eq!(rank_mod_p(&[r1, r2, r3]), Some(2));
    }

    #[test]
    fn denominator_divisible_by_p() {
        let x = QScalar::frac(1, P as i64);
        assert_eq!(rank_mod_p(&[vec![x]]), None);
    }
}
