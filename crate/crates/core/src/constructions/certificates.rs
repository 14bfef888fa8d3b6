//! Certificates for the fixture subspaces, assembled from their structure.

use crate::error::Error;
use crate::exact::{Field, Matrix, QMatrix, QScalar, QuadScalar};
use crate::constructions::fixtures::{
    block_sign, l0, l0_perp, l1, l2, l_theorem1, m_subspace, signs, t_shur, theorem1_eigendata, theorem1_functional,
    theorem1_sandwich,
};
use crate::rank1::certificate::{Certificate, CornerShape, Evidence, Subject, Verdict};
use crate::rank1::corner::corner_block_certificate;
use crate::rank1::dmr::{dmr_block_certificate, lift};
use crate::rank1::staircase::staircase_transitive;
use crate::rank1::tensor::tensor_nontransitivity;
use crate::rank1::Knowledge;
use crate::subspace::Subspace;

/// `𝔏` is transitive: its coupling map has eigenvalues `(i, −i, 1, −1)` on a rank-2 eigenbasis.
pub fn theorem1_transitive() -> Result<Certificate, Error> {
    let (c, l) = theorem1_eigendata();
    let (cq, lq) = lift(&c, &l);
    dmr_block_certificate(&l_theorem1(), &QScalar::zero(), &cq, &lq)
}

/// `𝔏 ⊗ 𝔏` is not transitive: `Tr(X A Yᵀ) = 0` for `A = diag(1, 1, −1, −1)`.
pub fn theorem1_tensor() -> Result<Certificate, Error> {
    let l = l_theorem1();
    tensor_nontransitivity(&l, &l, &theorem1_sandwich(), &theorem1_functional())
}

/// Eigen-data over `ℚ(i)(√2)` of `Ψ([[e,f],[g,h]]) = [[h, 2g], [f, e]]`.
pub fn l0_eigendata() -> (QScalar, Vec<Matrix<QuadScalar>>, Vec<QuadScalar>) {
    let two = QScalar::from_int(2);
    let r = QuadScalar::root(two.clone());
    let q = |x: i64| QuadScalar::from_q(&QScalar::from_int(x));
    let z = q(0);
    let mk = |a: QuadScalar, b: QuadScalar, c: QuadScalar, d: QuadScalar| Matrix::from_vec(2, 2, vec![a, b, c, d]);
    let neg_r = r.negate();
    let c = vec![
        mk(q(1), z.clone(), z.clone(), q(1)),
        mk(q(1), z.clone(), z.clone(), q(-1)),
        mk(z.clone(), r.clone(), q(1), z.clone()),
        mk(z.clone(), neg_r.clone(), q(1), z),
    ];
    (two, c, vec![q(1), q(-1), r, neg_r])
}

pub fn l0_transitive() -> Result<Certificate, Error> {
    let (d, c, l) = l0_eigendata();
    dmr_block_certificate(&l0(), &d, &c, &l)
}

/// `𝔏₀^⊥ = diag(1, 1, −1, −1) · 𝔏₀`.
pub fn l0_perp_transitive() -> Result<Certificate, Error> {
    let inner = l0_transitive()?;
    let ev = Evidence::Equivalence { left: block_sign(), right: QMatrix::identity(4), inner: Box::new(inner) };
    let c = Certificate::space(&l0_perp(), Verdict::Transitive, "equivalence", ev);
    c.check()?;
    Ok(c)
}

/// `(𝔏₀^⊥)*`, the lower corner family.
pub fn l0_perp_adjoint_transitive() -> Result<Certificate, Error> {
    let inner = l0_perp_transitive()?;
    let c = Certificate::space(
        &l0_perp().adjoint(),
        Verdict::Transitive,
        "adjoint",
        Evidence::Adjoint { inner: Box::new(inner) },
    );
    c.check()?;
    Ok(c)
}

fn staircase_or_fail(s: &Subspace, what: &str) -> Result<Certificate, Error> {
    staircase_transitive(s).ok_or_else(|| Error::Certificate(format!("staircase argument does not apply to {what}")))
}

pub fn m_transitive() -> Result<Certificate, Error> {
    staircase_or_fail(&m_subspace(), "M")
}

/// `𝔐̂`, whose perp is `𝔑̂`.
pub fn m_hat_transitive() -> Result<Certificate, Error> {
    staircase_or_fail(&m_subspace().schur_map(&t_shur())?, "the Schur image of M")
}

fn corner(subject: &Subspace, shape: CornerShape) -> Result<Certificate, Error> {
    corner_block_certificate(
        subject,
        shape,
        &t_shur(),
        m_transitive()?,
        m_hat_transitive()?,
        l0_perp_transitive()?,
        l0_perp_adjoint_transitive()?,
    )
}

pub fn l1_transitive() -> Result<Certificate, Error> {
    corner(&l1(), CornerShape::SourceTopLeft)
}

pub fn l2_transitive() -> Result<Certificate, Error> {
    corner(&l2(), CornerShape::SourceBottomRight)
}

/// Antidiagonal `J` with `J_{i, 3−i} = 1`.
pub fn antidiagonal(n: usize) -> QMatrix {
    let mut j = QMatrix::zeros(n, n);
    for i in 0..n {
        j.set(i, n - 1 - i, QScalar::one());
    }
    j
}

/// `Fᵀ = V` with `V_{i, 3−i} = s_i`.
fn signed_antidiagonal_functional() -> QMatrix {
    let s = signs();
    let mut v = QMatrix::zeros(4, 4);
    for (i, si) in s.iter().enumerate() {
        v.set(i, 3 - i, QScalar::from_int(*si));
    }
    v.transpose()
}

/// `𝔏₀^⊥ ⊗ 𝔏₀^⊥` is not transitive; the induced rank-one element is `u vᵀ`.
pub fn l0_perp_tensor() -> Result<Certificate, Error> {
    let l = l0_perp();
    tensor_nontransitivity(&l, &l, &antidiagonal(4), &signed_antidiagonal_functional())
}

/// `𝔏₀ ⊗ 𝔏₀` is not transitive, transported through `𝔏₀^⊥ = S 𝔏₀`.
pub fn l0_tensor() -> Result<Certificate, Error> {
    let l = l0();
    let s = block_sign();
    let f = &(&s * &signed_antidiagonal_functional()) * &s;
    tensor_nontransitivity(&l, &l, &antidiagonal(4), &f)
}

/// `[[G₁, *], [*, G₂]]` is transitive when both diagonal families are.
pub fn direct_sum_transitive(first: Certificate, second: Certificate) -> Result<Certificate, Error> {
    let g = Subspace::direct_sum_graph(first.subject.space()?, second.subject.space()?);
    let c = Certificate::space(
        &g,
        Verdict::Transitive,
        "direct-sum-block",
        Evidence::DirectSumBlock { first: Box::new(first), second: Box::new(second) },
    );
    c.check()?;
    Ok(c)
}

/// Every fixture certificate, registered for the orchestrator.
pub fn fixture_knowledge() -> Result<Knowledge, Error> {
    let mut k = Knowledge::new();
    for c in [
        theorem1_transitive()?,
        theorem1_tensor()?,
        l0_transitive()?,
        l0_perp_transitive()?,
        l0_perp_adjoint_transitive()?,
        m_transitive()?,
        m_hat_transitive()?,
        l1_transitive()?,
        l2_transitive()?,
        l0_perp_tensor()?,
        l0_tensor()?,
    ] {
        k.register(c)?;
    }
    k.add_sandwich(theorem1_sandwich());
    k.add_sandwich(antidiagonal(4));
    Ok(k)
}

/// Subject of a tensor certificate, for lookups.
pub fn tensor_subject(a: &Subspace, b: &Subspace) -> Subject {
    Subject::Tensor { left: a.clone(), right: b.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::extreme_vectors;
    use crate::rank1::tensor::functional_witness;
    use crate::rank1::verify_rank_one_in;

    #[test]
    fn fixture_certificates_verify() {
        for c in [
            theorem1_transitive().unwrap(),
            l0_transitive().unwrap(),
            l0_perp_transitive().unwrap(),
            l0_perp_adjoint_transitive().unwrap(),
            m_transitive().unwrap(),
            m_hat_transitive().unwrap(),
            l1_transitive().unwrap(),
            l2_transitive().unwrap(),
        ] {
            assert_eq!(c.verdict, Verdict::Transitive);
            c.verify().unwrap();
        }
        for c in [theorem1_tensor().unwrap(), l0_perp_tensor().unwrap(), l0_tensor().unwrap()] {
            assert_eq!(c.verdict, Verdict::NotTransitive);
            c.verify().unwrap();
        }
    }

    #[test]
    fn l0_perp_witness_is_u_v() {
        let (x, y) = functional_witness(&antidiagonal(4), &signed_antidiagonal_functional());
        let t = extreme_vectors();
        assert_eq!((x, y), (t.u.clone(), t.v.clone()));
        let l = l0_perp();
        assert!(verify_rank_one_in(&l.tensor(&l).perp(), &t.u, &t.v).unwrap());
    }

    #[test]
    fn corner_with_non_transitive_family_refused() {
        let bad = Certificate::space(&Subspace::scalars(4), Verdict::Transitive, "forged", Evidence::TrivialPerp);
        let r = corner_block_certificate(
            &l1(),
            CornerShape::SourceTopLeft,
            &t_shur(),
            m_transitive().unwrap(),
            m_hat_transitive().unwrap(),
            bad,
            l0_perp_adjoint_transitive().unwrap(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn direct_sum_of_corners() {
        let c = direct_sum_transitive(l1_transitive().unwrap(), l2_transitive().unwrap()).unwrap();
        assert_eq!(c.subject.dim(), 174);
        c.verify().unwrap();
    }
}
