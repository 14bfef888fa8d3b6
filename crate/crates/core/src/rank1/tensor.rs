//! Non-transitivity of tensor products through the identification
//! `x ⊗ y ↦ x yᵀ`, under which `(X ⊗ Y) vec(A) = vec(X A Yᵀ)` for row-major `vec`.
//!
//! Every check works with the factors only: `yᵀ (B₁ ⊗ B₂) x` equals
//! `Σ (Y_mᵀ B₁ X_m) ∘ B₂` for the reshaped vectors, so no Kronecker product
//! is ever formed.

use crate::error::Error;
use crate::exact::{QMatrix, QScalar};
use crate::rank1::certificate::{Certificate, Evidence, Subject, Verdict};
use crate::rank1::rank_one_in_perp;
use crate::subspace::Subspace;

/// Largest tensor ambient for which the explicit Kronecker route is also run.
pub const EXPLICIT_TENSOR_LIMIT: usize = 16;

fn reshape(v: &[QScalar], rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_vec(rows, cols, v.to_vec())
}

/// Whether `x yᵀ ∈ perp(l1 ⊗ l2)`, checked pair by pair on the factors.
pub fn tensor_perp_contains(l1: &Subspace, l2: &Subspace, x: &[QScalar], y: &[QScalar]) -> Result<bool, Error> {
    let (n1, n2) = (l1.ambient(), l2.ambient());
    let n = n1 * n2;
    if x.len() != n || y.len() != n {
        return Err(Error::Shape(format!("vectors must have length {n}")));
    }
    if x.iter().all(QScalar::is_zero) || y.iter().all(QScalar::is_zero) {
        return Err(Error::Invalid("rank-one factors must be nonzero".into()));
    }
    let xm = reshape(x, n1, n2);
    let ymt = reshape(y, n1, n2).transpose();
    let right = l2.basis();
    for b1 in l1.basis() {
        let g = &(&ymt * &b1) * &xm;
        if right.iter().any(|b2| !g.frobenius_bilinear(b2).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(x, y)` with `x = vec(A)`, `y = vec(Fᵀ)`.
pub fn functional_witness(a: &QMatrix, f: &QMatrix) -> (Vec<QScalar>, Vec<QScalar>) {
    (a.data().to_vec(), f.transpose().data().to_vec())
}

/// Number of basis pairs checked and whether all of `Tr(F X A Yᵀ)` vanish.
pub fn functional_pair_checks(l1: &Subspace, l2: &Subspace, a: &QMatrix, f: &QMatrix) -> (usize, bool) {
    let right = l2.basis();
    let mut count = 0;
    for x in l1.basis() {
        // Tr(F X A Yᵀ) = Σ (F X A) ∘ Y
        let g = &(f * &x) * a;
        for y in &right {
            count += 1;
            if !g.frobenius_bilinear(y).is_zero() {
                return (count, false);
            }
        }
    }
    (count, true)
}

pub(crate) fn check_functional(l1: &Subspace, l2: &Subspace, a: &QMatrix, f: &QMatrix) -> Result<(), Error> {
    let (n1, n2) = (l1.ambient(), l2.ambient());
    if (a.rows(), a.cols()) != (n1, n2) || (f.rows(), f.cols()) != (n2, n1) {
        return Err(Error::Certificate("functional data has the wrong shape".into()));
    }
    if a.is_zero() || f.is_zero() {
        return Err(Error::Certificate("A and F must be nonzero".into()));
    }
    if !functional_pair_checks(l1, l2, a, f).1 {
        return Err(Error::Certificate("some pair Tr(F X A Yᵀ) is nonzero".into()));
    }
    // second route: the induced rank-one element of the perp
    let (x, y) = functional_witness(a, f);
    if !tensor_perp_contains(l1, l2, &x, &y)? {
        return Err(Error::Certificate("induced rank-one element is not in the perp".into()));
    }
    if n1 * n2 <= EXPLICIT_TENSOR_LIMIT && !rank_one_in_perp(&l1.tensor(l2), &x, &y)? {
        return Err(Error::Certificate("explicit tensor check failed".into()));
    }
    Ok(())
}

/// `NOT_TRANSITIVE` for `l1 ⊗ l2` when the functional `F` kills `l1 A l2ᵀ`.
pub fn tensor_nontransitivity(l1: &Subspace, l2: &Subspace, a: &QMatrix, f: &QMatrix) -> Result<Certificate, Error> {
    let subject = Subject::Tensor { left: l1.clone(), right: l2.clone() };
    let cert = Certificate::new(
        subject,
        Verdict::NotTransitive,
        "tensor-functional",
        Evidence::TensorFunctional { a: a.clone(), f: f.clone() },
        0,
    );
    cert.check()?;
    Ok(cert)
}

/// A functional vanishing on `l1 A l2ᵀ`, if that span is proper.
pub fn find_functional(l1: &Subspace, l2: &Subspace, a: &QMatrix) -> Option<QMatrix> {
    if l1.ambient() != l2.ambient() {
        return None;
    }
    let s = l1.sandwich_span2(a, l2);
    // Tr(T F) = 0 for all T ∈ s
    s.perp().basis().into_iter().next()
}
