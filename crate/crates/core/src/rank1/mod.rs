//! Rank-one elements of operator subspaces and, through the bilinear perp,
//! transitivity.
//!
//! A rank-one element is always written `x yᵀ`. A subspace `L` is transitive
//! exactly when `perp(L)` has no rank-one element, and `x yᵀ ∈ perp(L)` means
//! `yᵀ B x = 0` for every `B ∈ L`.

pub mod certificate;
pub mod corner;
pub mod dmr;
pub mod groebner;
pub mod heuristic;
pub mod n2;
pub mod orchestrator;
pub mod rationalize;
pub mod staircase;
pub mod tensor;

pub use certificate::{Certificate, CornerShape, Evidence, QuadPair, Subject, Verdict};
pub use orchestrator::{find_rank_one, is_transitive, is_transitive_tensor, Knowledge, SearchConfig};

use crate::error::Error;
use crate::exact::{rank, QMatrix, QScalar};
use crate::subspace::Subspace;

fn check_vectors(n: usize, x: &[QScalar], y: &[QScalar]) -> Result<(), Error> {
    if x.len() != n || y.len() != n {
        return Err(Error::Shape(format!("vectors must have length {n}")));
    }
    if x.iter().all(QScalar::is_zero) || y.iter().all(QScalar::is_zero) {
        return Err(Error::Invalid("rank-one factors must be nonzero".into()));
    }
    Ok(())
}

/// Exact membership of `x yᵀ` in `w`.
pub fn verify_rank_one_in(w: &Subspace, x: &[QScalar], y: &[QScalar]) -> Result<bool, Error> {
    check_vectors(w.ambient(), x, y)?;
    Ok(w.contains(&QMatrix::outer_t(&QMatrix::column(x), &QMatrix::column(y))))
}

/// Exact membership of `x yᵀ` in `perp(l)`, i.e. `yᵀ B x = 0` for all `B ∈ l`.
pub fn rank_one_in_perp(l: &Subspace, x: &[QScalar], y: &[QScalar]) -> Result<bool, Error> {
    check_vectors(l.ambient(), x, y)?;
    let (xc, yc) = (QMatrix::column(x), QMatrix::column(y));
    Ok(l.basis().iter().all(|b| b.bilinear(&yc, &xc).is_zero()))
}

/// `n − dim(L φ)`; zero exactly when `L φ = ℂⁿ`.
pub fn transitivity_defect(l: &Subspace, phi: &[QScalar]) -> Result<usize, Error> {
    let n = l.ambient();
    if phi.len() != n {
        return Err(Error::Shape(format!("vector must have length {n}")));
    }
    if phi.iter().all(QScalar::is_zero) {
        return Err(Error::Invalid("vector must be nonzero".into()));
    }
    let p = QMatrix::column(phi);
    let basis = l.basis();
    let mut cols = QMatrix::zeros(n, basis.len());
    for (k, b) in basis.iter().enumerate() {
        cols.set_block(0, k, &(b * &p));
    }
    Ok(n - rank(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_membership_examples() {
        let e1 = vec![QScalar::one(), QScalar::zero()];
        assert!(verify_rank_one_in(&Subspace::full(2), &e1, &e1).unwrap());
        assert!(!verify_rank_one_in(&Subspace::scalars(2), &e1, &e1).unwrap());
        assert!(verify_rank_one_in(&Subspace::full(2), &[QScalar::zero(), QScalar::zero()], &e1).is_err());
    }

    #[test]
    fn defect_examples() {
        let phi = vec![QScalar::one(), QScalar::zero(), QScalar::zero()];
        assert_eq!(transitivity_defect(&Subspace::full(3), &phi).unwrap(), 0);
        assert_eq!(transitivity_defect(&Subspace::scalars(3), &phi).unwrap(), 2);
    }
}
