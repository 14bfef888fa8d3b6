//! Transitivity of `{[[A, Φ(B)], [B, A]] : A, B ∈ M_m}` from eigen-data of `Φ`.
//!
//! The map `Φ` is supplied diagonalized: an eigenbasis `C_i` of `M_m` with
//! pairwise distinct nonzero eigenvalues `λ_i`, possibly over a quadratic
//! extension of ℚ(i). The case analysis on `[[A, Φ(B)], [B, A]] (x; y) = (z₁; z₂)`
//! needs, when `x = λ y`, that the range of `Φ − λ²` be transitive. Its perp
//! under `Tr(XY)` is spanned by the dual basis element `D_i` with
//! `Tr(C_j D_i) = δ_ij` when `λ² = λ_i`, so every `D_i` must have rank at least 2.

use crate::error::Error;
use crate::exact::{inverse, rank_generic, Field, Matrix, QMatrix, QScalar, QuadScalar};
use crate::rank1::certificate::{Certificate, Evidence, QuadPair, Verdict};
use crate::subspace::Subspace;

type QuadMatrix = Matrix<QuadScalar>;

fn to_quad_matrix(m: usize, flat: &[QuadPair], radicand: &QScalar) -> Result<QuadMatrix, Error> {
    if flat.len() != m * m {
        return Err(Error::Certificate("eigenbasis element has the wrong size".into()));
    }
    let data = flat.iter().map(|p| p.to_quad(radicand)).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_vec(m, m, data))
}

/// The linear map on row-major `vec(B)` with the given eigen-data, checked to be defined over ℚ(i).
fn assemble_map(c: &[QuadMatrix], lambda: &[QuadScalar]) -> Result<QMatrix, Error> {
    let k = c.len();
    let mut p = QuadMatrix::zeros(k, k);
    for (j, cj) in c.iter().enumerate() {
        for (i, v) in cj.data().iter().enumerate() {
            p.set(i, j, v.clone());
        }
    }
    let pinv = inverse(&p).ok_or_else(|| Error::Certificate("eigenbasis is not a basis".into()))?;
    let phi = &(&p * &QuadMatrix::diag(lambda)) * &pinv;
    let data = phi
        .data()
        .iter()
        .map(|x| x.as_q().cloned().ok_or_else(|| Error::Certificate("map is not defined over Q(i)".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_vec(k, k, data))
}

/// `{[[A, Φ(B)], [B, A]]}` for `Φ` acting on row-major vectorizations.
pub fn dmr_subspace(m: usize, phi: &QMatrix) -> Subspace {
    let n = 2 * m;
    let mut mats = Vec::with_capacity(2 * m * m);
    let z = QMatrix::zeros(m, m);
    for k in 0..m * m {
        let unit = QMatrix::unit(m * m, k);
        let e = QMatrix::unvec_rowmajor(&unit, m, m);
        let fe = QMatrix::unvec_rowmajor(&(phi * &unit), m, m);
        mats.push(QMatrix::from_blocks(&e, &z, &z, &e));
        mats.push(QMatrix::from_blocks(&z, &fe, &e, &z));
    }
    Subspace::span(n, &mats).expect("square blocks")
}

pub(crate) fn check(
    subject: &Subspace,
    radicand: &QScalar,
    eigenbasis: &[Vec<QuadPair>],
    eigenvalues: &[QuadPair],
) -> Result<(), Error> {
    let n = subject.ambient();
    if n % 2 != 0 {
        return Err(Error::Certificate("block subspace needs even ambient".into()));
    }
    let m = n / 2;
    if eigenbasis.len() != m * m || eigenvalues.len() != m * m {
        return Err(Error::Certificate(format!("expected {} eigenpairs", m * m)));
    }
    let c = eigenbasis.iter().map(|f| to_quad_matrix(m, f, radicand)).collect::<Result<Vec<_>, _>>()?;
    let lambda = eigenvalues.iter().map(|p| p.to_quad(radicand)).collect::<Result<Vec<_>, _>>()?;
    for (i, li) in lambda.iter().enumerate() {
        if li.is_zero() {
            return Err(Error::Certificate("zero eigenvalue: the map is not an isomorphism".into()));
        }
        if lambda[..i].contains(li) {
            return Err(Error::Certificate("eigenvalues are not pairwise distinct".into()));
        }
    }
    if let Some(i) = c.iter().position(|ci| rank_generic(ci) < 2) {
        return Err(Error::Certificate(format!("eigenvector {i} has rank below 2")));
    }
    let phi = assemble_map(&c, &lambda)?;
    // dual basis: rows vec(C_i) against vec(D_jᵀ)
    let k = m * m;
    let mut q = QuadMatrix::zeros(k, k);
    for (i, ci) in c.iter().enumerate() {
        for (j, v) in ci.data().iter().enumerate() {
            q.set(i, j, v.clone());
        }
    }
    let qinv = inverse(&q).ok_or_else(|| Error::Certificate("eigenbasis is not a basis".into()))?;
    for j in 0..k {
        let col: Vec<QuadScalar> = (0..k).map(|r| qinv.get(r, j).clone()).collect();
        let dt = Matrix::from_vec(m, m, col);
        if rank_generic(&dt) < 2 {
            return Err(Error::Certificate(format!("dual eigenvector {j} has rank below 2")));
        }
    }
    if &dmr_subspace(m, &phi) != subject {
        return Err(Error::Certificate("subject differs from the block subspace of the map".into()));
    }
    Ok(())
}

/// Build and check a `TRANSITIVE` certificate for the block subspace of the given eigen-data.
pub fn dmr_block_certificate(
    subject: &Subspace,
    radicand: &QScalar,
    eigenbasis: &[QuadMatrix],
    eigenvalues: &[QuadScalar],
) -> Result<Certificate, Error> {
    let ev = Evidence::Dmr {
        radicand: radicand.clone(),
        eigenbasis: eigenbasis.iter().map(|c| c.data().iter().map(QuadPair::from_quad).collect()).collect(),
        eigenvalues: eigenvalues.iter().map(QuadPair::from_quad).collect(),
    };
    let cert = Certificate::space(subject, Verdict::Transitive, "dmr-block", ev);
    cert.check()?;
    Ok(cert)
}

/// Eigen-data over ℚ(i) lifted to the (trivial) extension.
pub fn lift(c: &[QMatrix], l: &[QScalar]) -> (Vec<QuadMatrix>, Vec<QuadScalar>) {
    (c.iter().map(QuadMatrix::from_q).collect(), l.iter().map(QuadScalar::from_q).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::{l_theorem1, theorem1_eigendata};

    #[test]
    fn theorem1_block_subspace_is_transitive() {
        let (c, l) = theorem1_eigendata();
        let (cq, lq) = lift(&c, &l);
        let cert = dmr_block_certificate(&l_theorem1(), &QScalar::zero(), &cq, &lq).unwrap();
        cert.verify().unwrap();
    }

    #[test]
    fn identity_map_refused() {
        let c: Vec<QMatrix> = (0..4).map(|k| QMatrix::matrix_unit(2, k / 2, k % 2)).collect();
        let (cq, lq) = lift(&c, &vec![QScalar::one(); 4]);
        let subject = dmr_subspace(2, &QMatrix::identity(4));
        assert!(dmr_block_certificate(&subject, &QScalar::zero(), &cq, &lq).is_err());
    }

    #[test]
    fn rank_one_eigenvector_refused() {
        let c: Vec<QMatrix> = (0..4).map(|k| QMatrix::matrix_unit(2, k / 2, k % 2)).collect();
        let l: Vec<QScalar> = (1..=4).map(QScalar::from_int).collect();
        let (cq, lq) = lift(&c, &l);
        let phi = QMatrix::diag(&l);
        let subject = dmr_subspace(2, &phi);
        let err = dmr_block_certificate(&subject, &QScalar::zero(), &cq, &lq).unwrap_err();
        assert!(err.to_string().contains("rank below 2"));
    }
}
