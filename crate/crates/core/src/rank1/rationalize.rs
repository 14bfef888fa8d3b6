//! Turning floating-point search output into exact Gaussian-rational candidates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exact::float::{FVector, C64};
use crate::exact::{kernel, QMatrix, QScalar};
use crate::rank1::certificate::{Certificate, Evidence, Subject, Verdict};
use crate::rank1::verify_rank_one_in;
use crate::subspace::Subspace;

pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

/// Candidates whose residual is at least this large are never rationalized.
pub const RESIDUAL_GATE: f64 = 1e-3;

/// Best continued-fraction convergent of `x` with denominator at most `max_den`.
pub fn rationalize_f64(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let max_den = BigInt::from(max_den.max(1));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
        if !r.is_finite() || r.abs() > 1e15 {
            break;
        }
    }
    if k1.is_zero() {
        return Some(BigRational::from_integer(BigInt::from(x.round() as i64)));
    }
    Some(BigRational::new(h1, k1))
}

pub fn rationalize_c64(z: C64, max_den: u64) -> Option<QScalar> {
    Some(QScalar::new(rationalize_f64(z.re, max_den)?, rationalize_f64(z.im, max_den)?))
}

/// Scale so the largest-modulus entry is 1, then round every entry.
pub fn rationalize_vector(v: &FVector, max_den: u64) -> Option<Vec<QScalar>> {
    let (k, top) = v.iter().enumerate().fold((0, 0.0), |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc });
    if top == 0.0 {
        return None;
    }
    let pivot = v[k];
    let out = v.iter().map(|z| rationalize_c64(z / pivot, max_den)).collect::<Option<Vec<_>>>()?;
    if out.iter().all(QScalar::is_zero) {
        return None;
    }
    Some(out)
}

/// Float candidate for `x yᵀ` in some target subspace.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub x: FVector,
    pub y: FVector,
    pub residual: f64,
    pub seed: u64,
    pub iterations: u64,
}

/// Exact `(x, y)` with `x yᵀ ∈ target` derived from a candidate, trying the
/// rounded pair first and then an exact `y` from the kernel for the rounded `x`.
pub fn rationalize_pair(target: &Subspace, cand: &Candidate, max_den: u64) -> Option<(Vec<QScalar>, Vec<QScalar>)> {
    if cand.residual >= RESIDUAL_GATE || !cand.residual.is_finite() {
        return None;
    }
    let x = rationalize_vector(&cand.x, max_den)?;
    if let Some(y) = rationalize_vector(&cand.y, max_den) {
        if verify_rank_one_in(target, &x, &y).ok()? {
            return Some((x, y));
        }
    }
    let y = exact_partner(target, &x)?;
    verify_rank_one_in(target, &x, &y).ok()?.then_some((x, y))
}

/// Some `y ≠ 0` with `x yᵀ ∈ target`, i.e. `yᵀ C x = 0` for every `C ∈ perp(target)`.
pub fn exact_partner(target: &Subspace, x: &[QScalar]) -> Option<Vec<QScalar>> {
    let n = target.ambient();
    let perp = target.perp().basis();
    let xc = QMatrix::column(x);
    let mut rows = QMatrix::zeros(perp.len().max(1), n);
    for (k, c) in perp.iter().enumerate() {
        let cx = c * &xc;
        for j in 0..n {
            rows.set(k, j, cx.get(j, 0).clone());
        }
    }
    kernel(&rows).into_iter().next().map(QMatrix::into_data)
}

/// `RANK_ONE_FOUND` when the candidate survives exact verification, `UNDECIDED` otherwise.
pub fn rationalize_and_verify(w: &Subspace, cand: &Candidate, max_den: u64) -> Result<Certificate, Error> {
    let subject = Subject::Space { space: w.clone() };
    Ok(match rationalize_pair(w, cand, max_den) {
        Some((x, y)) => Certificate::new(subject, Verdict::RankOneFound, "heuristic+rationalize", Evidence::Witness { x, y }, cand.iterations),
        None => Certificate::undecided(
            subject,
            "heuristic+rationalize",
            Evidence::Search {
                seed: cand.seed,
                iterations: cand.iterations,
                residual: cand.residual,
                note: "rationalized candidate failed exact verification".into(),
            },
            cand.iterations,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_near_integers() {
        assert_eq!(rationalize_f64(0.9999999, 1000).unwrap(), BigRational::one());
        assert_eq!(rationalize_f64(0.0, 1000).unwrap(), BigRational::zero());
        assert_eq!(rationalize_f64(-0.3333333333, 1000).unwrap(), BigRational::new((-1).into(), 3.into()));
        assert_eq!(rationalize_f64(0.75, 1_000_000).unwrap(), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn noise_candidate_stays_undecided() {
        let w = Subspace::scalars(3);
        let cand = Candidate {
            x: FVector::from_vec(vec![C64::new(0.3, 0.1), C64::new(-0.7, 0.2), C64::new(0.11, 0.5)]),
            y: FVector::from_vec(vec![C64::new(0.9, 0.0), C64::new(0.2, -0.4), C64::new(0.6, 0.3)]),
            residual: 0.5,
            seed: 1,
            iterations: 10,
        };
        let c = rationalize_and_verify(&w, &cand, DEFAULT_MAX_DENOMINATOR).unwrap();
        assert_eq!(c.verdict, Verdict::Undecided);
        c.verify().unwrap();
    }
}
