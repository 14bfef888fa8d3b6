//! Exact elimination: reduced row echelon form, kernels, solves, rank and
//! positive-semidefiniteness.

use std::cmp::Ordering;

use num_rational::BigRational;

use crate::error::Error;
use crate::exact::field::Field;
use crate::exact::matrix::{Matrix, QMatrix};
use crate::exact::scalar::{integral_row, GaussInt, QScalar};

/// Reduced row echelon form and pivot columns (Gauss–Jordan).
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<F>> = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        for x in a[r].iter_mut().skip(c) {
            *x = x.times(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.minus(&f.times(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = a.into_iter().flatten().collect();
    (Matrix::from_vec(rows, cols, data), pivots)
}

pub fn rank_generic<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : M x = 0}` as column vectors.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Matrix<F>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = Matrix::zeros(cols, 1);
        v.set(f, 0, F::one());
        for (row, &p) in pivots.iter().enumerate() {
            let e = r.get(row, f);
            if !e.is_zero() {
                v.set(p, 0, e.negate());
            }
        }
        out.push(v);
    }
    out
}

/// Some `x` with `A x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(a.rows(), b.rows());
    assert_eq!(b.cols(), 1);
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, b);
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = Matrix::zeros(n, 1);
    for (row, &p) in pivots.iter().enumerate() {
        x.set(p, 0, r.get(row, n).clone());
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.rows();
    assert!(a.is_square());
    let mut aug = Matrix::zeros(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::identity(n));
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.block(0, n, n, n))
}

/// Rank over ℚ(i) via fraction-free (Bareiss) elimination on ℤ[i].
pub fn rank(m: &QMatrix) -> usize {
    let mut a: Vec<Vec<GaussInt>> =
        (0..m.rows()).map(|i| integral_row(m.row(i))).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let rows = a.len();
    let cols = m.cols();
    let mut prev = GaussInt { re: 1.into(), im: 0.into() };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c..cols {
                let v = pivot.mul(&row[j]).sub(&f.mul(&prow[j]));
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            for x in row[..c].iter_mut() {
                *x = GaussInt { re: 0.into(), im: 0.into() };
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Decomposition `H = Σ d_k l_k l_k†` with every `d_k > 0`, or `None` when the
/// Hermitian matrix `H` is not positive semidefinite.
pub fn psd_decompose(h: &QMatrix) -> Result<Option<Vec<(BigRational, Vec<QScalar>)>>, Error> {
    if !h.is_hermitian() {
        return Err(Error::Shape("matrix is not Hermitian".into()));
    }
    let n = h.rows();
    let mut w = h.to_rows();
    let mut terms = Vec::new();
    for k in 0..n {
        let d = w[k][k].re().clone();
        match d.cmp(&BigRational::from_integer(0.into())) {
            Ordering::Less => return Ok(None),
            Ordering::Equal => {
                if w[k][k + 1..].iter().any(|x| !x.is_zero()) {
                    return Ok(None);
                }
            }
            Ordering::Greater => {
                let dq = QScalar::from_rational(d.clone());
                let dinv = dq.inv().expect("positive pivot");
                let mut l = vec![QScalar::zero(); n];
                for (j, lj) in l.iter_mut().enumerate().skip(k) {
                    *lj = &w[j][k] * &dinv;
                }
                let col: Vec<QScalar> = (0..n).map(|i| w[i][k].clone()).collect();
                for i in k + 1..n {
                    if col[i].is_zero() {
                        continue;
                    }
                    let f = &col[i] * &dinv;
                    for j in k + 1..n {
                        let wkj = &w[k][j];
                        if !wkj.is_zero() {
                            let t = &f * wkj;
                            w[i][j] -= &t;
                        }
                    }
                }
                terms.push((d, l));
            }
        }
    }
    Ok(Some(terms))
}

/// Exact positive-semidefiniteness of a Hermitian matrix.
pub fn is_psd_hermitian(h: &QMatrix) -> Result<bool, Error> {
    Ok(psd_decompose(h)?.is_some())
}

/// Positive definiteness: PSD with every pivot strictly positive.
pub fn is_pd_hermitian(h: &QMatrix) -> Result<bool, Error> {
    Ok(psd_decompose(h)?.is_some_and(|t| t.len() == h.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let m = QMatrix::from_gauss(&[&[(1, 0), (0, 1)], &[(0, -1), (1, 0)]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank_generic(&m), 1);
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(2, 3)), 0);
        let r = QMatrix::parse_rows(&[vec!["1/2", "1/3", "1"], vec!["1", "2/3", "2"], vec!["0", "1", "i"]]).unwrap();
        assert_eq!(rank(&r), 2);
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd_hermitian(&QMatrix::from_ints(&[&[2, 1], &[1, 2]])).unwrap());
        assert!(!is_psd_hermitian(&QMatrix::diag(&[QScalar::one(), QScalar::from_int(-1)])).unwrap());
        assert!(is_psd_hermitian(&QMatrix::from_gauss(&[&[(1, 0), (0, 1)], &[(0, -1), (1, 0)]])).unwrap());
        assert!(!is_psd_hermitian(&QMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(is_psd_hermitian(&QMatrix::from_gauss(&[&[(1, 0), (0, 2)], &[(0, -2), (1, 0)]])).is_ok_and(|b| !b));
        assert!(is_psd_hermitian(&QMatrix::from_gauss(&[&[(0, 1)]])).is_err());
    }

    #[test]
    fn psd_terms_reconstruct() {
        let h = QMatrix::from_gauss(&[&[(3, 0), (1, 1), (0, 0)], &[(1, -1), (2, 0), (0, 1)], &[(0, 0), (0, -1), (4, 0)]]);
        let terms = psd_decompose(&h).unwrap().unwrap();
        let mut sum = QMatrix::zeros(3, 3);
        for (d, l) in &terms {
            let v = QMatrix::column(l);
            sum = &sum + &(&v * &v.adjoint()).scale(&QScalar::from_rational(d.clone()));
        }
        assert_eq!(sum, h);
    }

    #[test]
    fn kernel_and_solve() {
        let a = QMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&a * v).is_zero());
        }
        let b = QMatrix::column(&[QScalar::from_int(1), QScalar::from_int(2)]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a * &x, b);
        let bad = QMatrix::column(&[QScalar::from_int(1), QScalar::from_int(3)]);
        assert!(solve(&a, &bad).is_none());
        let inv = inverse(&QMatrix::from_gauss(&[&[(1, 0), (0, 1)], &[(0, 0), (2, 0)]])).unwrap();
        assert_eq!(&inv * &QMatrix::from_gauss(&[&[(1, 0), (0, 1)], &[(0, 0), (2, 0)]]), QMatrix::identity(2));
    }
}
