//! Complete decision of rank-one membership for subspaces of `M₂`.

use crate::error::Error;
use crate::exact::{Field, Matrix, QMatrix, QScalar, QuadScalar};
use crate::rank1::certificate::{Certificate, Evidence, QuadPair, Verdict};
use crate::subspace::Subspace;

fn det2<F: Field>(m: &Matrix<F>) -> F {
    m.get(0, 0).times(m.get(1, 1)).minus(&m.get(0, 1).times(m.get(1, 0)))
}

/// `(x, y)` with `m = x yᵀ`, for a nonzero matrix of rank one.
pub fn factor_rank_one<F: Field>(m: &Matrix<F>) -> Option<(Vec<F>, Vec<F>)> {
    let (r, c) = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())?;
    let inv = m.get(r, c).recip()?;
    let x: Vec<F> = (0..m.rows()).map(|i| m.get(i, c).clone()).collect();
    let y: Vec<F> = (0..m.cols()).map(|j| m.get(r, j).times(&inv)).collect();
    let check = Matrix::outer_t(&Matrix::column(&x), &Matrix::column(&y));
    (check == *m).then_some((x, y))
}

/// Exact decision for `w ⊂ M₂`; every outcome carries checkable evidence.
pub fn rank_one_decision_n2(w: &Subspace) -> Result<Certificate, Error> {
    if w.ambient() != 2 {
        return Err(Error::Invalid(format!("expected a subspace of M_2, got ambient {}", w.ambient())));
    }
    let basis = w.basis();
    let found = |x: Vec<QScalar>, y: Vec<QScalar>| {
        Certificate::space(w, Verdict::RankOneFound, "n2-decision", Evidence::Witness { x, y })
    };
    match basis.len() {
        0 => return Ok(Certificate::space(w, Verdict::NoRankOne, "n2-decision", Evidence::TrivialPerp)),
        1 => {
            let g = &basis[0];
            if det2(g).is_zero() {
                let (x, y) = factor_rank_one(g).expect("singular nonzero 2x2 has rank one");
                return Ok(found(x, y));
            }
            return Ok(Certificate::space(w, Verdict::NoRankOne, "n2-decision", Evidence::SmallAmbient));
        }
        _ => {}
    }
    let (s, t) = (&basis[0], &basis[1]);
    let [ds, m, dt] = det_pencil(s, t);
    if ds.is_zero() {
        let (x, y) = factor_rank_one(s).expect("rank one");
        return Ok(found(x, y));
    }
    let disc = &(&m * &m) - &(&(&ds * &dt) * &QScalar::from_int(4));
    let two_ds = &ds * &QScalar::from_int(2);
    if let Some(r) = disc.sqrt_exact() {
        let u = &(&r - &m) / &two_ds;
        let comb = &s.scale(&u) + t;
        let (x, y) = factor_rank_one(&comb).expect("root of the determinant gives rank one");
        return Ok(found(x, y));
    }
    let root = QuadScalar::root(disc.clone());
    let u = root
        .minus(&QuadScalar::from_q(&m))
        .times(&QuadScalar::from_q(&two_ds.inv().expect("nonzero")));
    let comb = &Matrix::<QuadScalar>::from_q(s).scale(&u) + &Matrix::<QuadScalar>::from_q(t);
    let (x, y) = factor_rank_one(&comb).expect("root of the determinant gives rank one");
    let ev = Evidence::QuadWitness {
        radicand: disc,
        x: x.iter().map(QuadPair::from_quad).collect(),
        y: y.iter().map(QuadPair::from_quad).collect(),
    };
    Ok(Certificate::space(w, Verdict::RankOneFound, "n2-decision", ev))
}

pub(crate) fn check_quad_witness(
    target: &Subspace,
    radicand: &QScalar,
    x: &[QuadPair],
    y: &[QuadPair],
) -> Result<(), Error> {
    let n = target.ambient();
    if x.len() != n || y.len() != n {
        return Err(Error::Certificate("witness length does not match ambient".into()));
    }
    let xq = x.iter().map(|p| p.to_quad(radicand)).collect::<Result<Vec<_>, _>>()?;
    let yq = y.iter().map(|p| p.to_quad(radicand)).collect::<Result<Vec<_>, _>>()?;
    if xq.iter().all(Field::is_zero) || yq.iter().all(Field::is_zero) {
        return Err(Error::Certificate("witness factor is zero".into()));
    }
    let (xc, yc) = (Matrix::column(&xq), Matrix::column(&yq));
    for c in target.perp().basis() {
        if !Matrix::<QuadScalar>::from_q(&c).bilinear(&yc, &xc).is_zero() {
            return Err(Error::Certificate("x yᵀ is not in the target".into()));
        }
    }
    Ok(())
}

pub(crate) fn check_small_ambient(target: &Subspace) -> Result<(), Error> {
    if target.ambient() != 2 {
        return Err(Error::Certificate("small-ambient evidence needs ambient 2".into()));
    }
    match target.basis().as_slice() {
        [] => Ok(()),
        [g] if !det2(g).is_zero() => Ok(()),
        _ => Err(Error::Certificate("target has a singular element".into())),
    }
}

/// Determinant polynomial `det(u S + T)` coefficients `(det S, m, det T)`.
pub fn det_pencil(s: &QMatrix, t: &QMatrix) -> [QScalar; 3] {
    let m = &(&(s.get(0, 0) * t.get(1, 1)) + &(t.get(0, 0) * s.get(1, 1)))
        - &(&(s.get(0, 1) * t.get(1, 0)) + &(t.get(0, 1) * s.get(1, 0)));
    [det2(s), m, det2(t)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(mats: &[QMatrix]) -> Subspace {
        Subspace::span(2, mats).unwrap()
    }

    #[test]
    fn examples() {
        let c = rank_one_decision_n2(&Subspace::scalars(2)).unwrap();
        assert_eq!(c.verdict, Verdict::NoRankOne);
        c.verify().unwrap();
        let d = rank_one_decision_n2(&span(&[QMatrix::diag(&[QScalar::one(), QScalar::zero()])])).unwrap();
        assert_eq!(d.verdict, Verdict::RankOneFound);
        d.verify().unwrap();
    }

    #[test]
    fn irrational_root_goes_through_extension() {
        // det(u I + [[0,1],[2,0]]) = u² − 2
        let w = span(&[QMatrix::identity(2), QMatrix::from_ints(&[&[0, 1], &[2, 0]])]);
        let c = rank_one_decision_n2(&w).unwrap();
        assert_eq!(c.verdict, Verdict::RankOneFound);
        assert!(matches!(c.evidence, Evidence::QuadWitness { .. }));
        c.verify().unwrap();
    }

    #[test]
    fn rotation_pencil_has_gaussian_root() {
        // det(u I + [[0,-1],[1,0]]) = u² + 1, roots ±i
        let w = span(&[QMatrix::identity(2), QMatrix::from_ints(&[&[0, -1], &[1, 0]])]);
        let c = rank_one_decision_n2(&w).unwrap();
        assert!(matches!(c.evidence, Evidence::Witness { .. }));
        c.verify().unwrap();
    }
}
