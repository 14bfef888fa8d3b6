//! Outermost-diagonal certificates for the absence of rank-one elements.
//!
//! Take a nonzero `N` and let `δ` be the largest signed index of a nonzero
//! diagonal of `N`. The square submatrix having that diagonal as its main
//! diagonal is lower triangular (every entry above it lies on a diagonal with
//! index greater than `δ`), so `rank N` is at least the number of nonzero
//! entries on diagonal `δ`. If the parametrization of every diagonal forces at
//! least two nonzero entries whenever it is nonzero, no element has rank one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{rank, QMatrix, QScalar};
use crate::rank1::certificate::{Certificate, Evidence, Verdict};
use crate::subspace::Subspace;

/// Entries of diagonal `offset` as linear forms in the listed parameters:
/// entry `k` equals `Σ_p coeffs[k][p] · param[params[p]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalBlock {
    pub offset: i64,
    pub params: Vec<usize>,
    pub coeffs: QMatrix,
}

/// Position of entry `k` on diagonal `offset` of an `n × n` matrix.
pub fn diagonal_position(offset: i64, k: usize) -> (usize, usize) {
    if offset >= 0 {
        (k, k + offset as usize)
    } else {
        (k + (-offset) as usize, k)
    }
}

pub fn diagonal_len(n: usize, offset: i64) -> usize {
    n - offset.unsigned_abs() as usize
}

/// Split `s` along diagonals when `s = ⊕_δ (s ∩ D_δ)`; `None` otherwise.
pub fn diagonal_parametrization(s: &Subspace) -> Option<Vec<DiagonalBlock>> {
    let n = s.ambient();
    let mut parts: BTreeMap<i64, Vec<QMatrix>> = BTreeMap::new();
    for b in s.basis() {
        let mut comps: BTreeMap<i64, QMatrix> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let v = b.get(i, j);
                if !v.is_zero() {
                    let d = j as i64 - i as i64;
                    comps.entry(d).or_insert_with(|| QMatrix::zeros(n, n)).set(i, j, v.clone());
                }
            }
        }
        for (d, c) in comps {
            if !s.contains(&c) {
                return None;
            }
            parts.entry(d).or_default().push(c);
        }
    }
    let mut next = 0;
    let mut out = Vec::new();
    for (d, mats) in parts {
        let basis = Subspace::span(n, &mats).expect("square").basis();
        let len = diagonal_len(n, d);
        let mut coeffs = QMatrix::zeros(len, basis.len());
        for (p, b) in basis.iter().enumerate() {
            for k in 0..len {
                let (i, j) = diagonal_position(d, k);
                coeffs.set(k, p, b.get(i, j).clone());
            }
        }
        out.push(DiagonalBlock { offset: d, params: (next..next + basis.len()).collect(), coeffs });
        next += basis.len();
    }
    Some(out)
}

/// The subspace generated by a diagonal parametrization.
pub fn parametrized_span(n: usize, diagonals: &[DiagonalBlock]) -> Result<Subspace, Error> {
    let mut s = Subspace::zero(n);
    for blk in diagonals {
        if blk.offset.unsigned_abs() as usize >= n.max(1) {
            return Err(Error::Certificate(format!("diagonal {} outside a {n}x{n} matrix", blk.offset)));
        }
        let len = diagonal_len(n, blk.offset);
        if blk.coeffs.rows() != len || blk.coeffs.cols() != blk.params.len() {
            return Err(Error::Certificate(format!("coefficient shape mismatch on diagonal {}", blk.offset)));
        }
        for p in 0..blk.params.len() {
            let mut m = QMatrix::zeros(n, n);
            for k in 0..len {
                let (i, j) = diagonal_position(blk.offset, k);
                m.set(i, j, blk.coeffs.get(k, p).clone());
            }
            s.insert(&m)?;
        }
    }
    Ok(s)
}

/// Rows `k` whose entry can be the only nonzero entry of the diagonal.
pub fn lonely_entries(blk: &DiagonalBlock) -> Vec<usize> {
    let full = rank(&blk.coeffs);
    let rows = blk.coeffs.rows();
    (0..rows)
        .filter(|&k| {
            let others: Vec<usize> = (0..rows).filter(|&r| r != k).collect();
            let sub = blk.coeffs.submatrix(&others, &(0..blk.coeffs.cols()).collect::<Vec<_>>());
            rank(&sub) != full
        })
        .collect()
}

pub(crate) fn check(target: &Subspace, diagonals: &[DiagonalBlock]) -> Result<(), Error> {
    let mut offsets = BTreeSet::new();
    let mut params = BTreeSet::new();
    for blk in diagonals {
        if !offsets.insert(blk.offset) {
            return Err(Error::Certificate(format!("diagonal {} listed twice", blk.offset)));
        }
        for p in &blk.params {
            if !params.insert(*p) {
                return Err(Error::Certificate(format!("parameter {p} shared between diagonals")));
            }
        }
    }
    if &parametrized_span(target.ambient(), diagonals)? != target {
        return Err(Error::Certificate("parametrization does not generate the target".into()));
    }
    for blk in diagonals {
        if let Some(k) = lonely_entries(blk).first() {
            return Err(Error::Certificate(format!(
                "diagonal {} admits a lone nonzero entry at position {k}",
                blk.offset
            )));
        }
    }
    Ok(())
}

/// Staircase evidence that `w` has no rank-one element, when the argument applies.
pub fn staircase_evidence(w: &Subspace) -> Option<Evidence> {
    let diagonals = diagonal_parametrization(w)?;
    check(w, &diagonals).ok()?;
    Some(Evidence::Staircase { diagonals })
}

/// Certificate from an explicit parametrization; refused when some diagonal
/// can carry a single nonzero entry.
pub fn staircase_certificate(n: usize, diagonals: Vec<DiagonalBlock>) -> Result<Certificate, Error> {
    let w = parametrized_span(n, &diagonals)?;
    check(&w, &diagonals)?;
    Ok(Certificate::space(&w, Verdict::NoRankOne, "staircase", Evidence::Staircase { diagonals }))
}

/// `TRANSITIVE` for `l` through the staircase argument on `perp(l)`.
pub fn staircase_transitive(l: &Subspace) -> Option<Certificate> {
    let ev = staircase_evidence(&l.perp())?;
    Some(Certificate::space(l, Verdict::Transitive, "staircase", ev))
}

pub fn unit_diagonal(n: usize, offset: i64, param: usize) -> DiagonalBlock {
    let len = diagonal_len(n, offset);
    DiagonalBlock {
        offset,
        params: vec![param],
        coeffs: QMatrix::from_vec(len, 1, vec![QScalar::one(); len]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::{hat, m_subspace, n_subspace};

    #[test]
    fn n_and_its_hat_have_no_rank_one() {
        let n = n_subspace();
        let ev = staircase_evidence(&n).expect("N splits along diagonals");
        let c = Certificate::space(&n, Verdict::NoRankOne, "staircase", ev);
        c.verify().unwrap();
        let nh = n.map(hat);
        assert!(staircase_evidence(&nh).is_some());
        staircase_transitive(&m_subspace()).unwrap().verify().unwrap();
    }

    #[test]
    fn single_entry_diagonal_refused() {
        let blk = DiagonalBlock { offset: 1, params: vec![0], coeffs: QMatrix::from_ints(&[&[1]]) };
        assert!(staircase_certificate(2, vec![blk]).is_err());
        assert!(staircase_certificate(3, vec![unit_diagonal(3, 0, 0)]).is_ok());
    }

    #[test]
    fn shared_parameters_refused() {
        let a = unit_diagonal(3, 0, 0);
        let b = unit_diagonal(3, 1, 0);
        assert!(staircase_certificate(3, vec![a, b]).is_err());
    }
}
