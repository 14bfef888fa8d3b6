//! Floating-point mirrors of exact matrices for heuristic searches.

use nalgebra::{Complex, DMatrix, DVector};

use crate::exact::matrix::QMatrix;

pub type C64 = Complex<f64>;
pub type FMatrix = DMatrix<C64>;
pub type FVector = DVector<C64>;

pub fn to_float(m: &QMatrix) -> FMatrix {
    FMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let (re, im) = m.get(i, j).to_f64_pair();
        C64::new(re, im)
    })
}

/// Numerical rank: singular values above `tol · max(1, σ_max)`.
pub fn float_rank(m: &FMatrix, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0_f64, f64::max).max(1.0);
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Unit vector along the smallest right singular direction of `m`, with its singular value.
pub fn least_singular_direction(m: &FMatrix) -> (FVector, f64) {
    let n = m.ncols();
    // eigen-decomposition of the Hermitian Gram matrix avoids thin-SVD shape issues
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigen();
    let (k, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let v = if n == 0 { FVector::zeros(0) } else { eig.eigenvectors.column(k).into_owned() };
    (v, val.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::QScalar;

    #[test]
    fn float_rank_matches_exact_on_small_case() {
        let m = QMatrix::from_gauss(&[&[(1, 0), (0, 1)], &[(0, -1), (1, 0)]]);
        assert_eq!(float_rank(&to_float(&m), 1e-8), 1);
        assert_eq!(float_rank(&to_float(&QMatrix::identity(3)), 1e-8), 3);
        let v = QMatrix::column(&[QScalar::frac(1, 3), QScalar::i()]);
        assert!((to_float(&v)[(0, 0)].re - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn least_direction_of_singular_matrix() {
        let m = to_float(&QMatrix::from_ints(&[&[1, 1], &[1, 1]]));
        let (v, s) = least_singular_direction(&m);
        assert!(s < 1e-8);
        assert!((v[0] + v[1]).norm() < 1e-8);
    }
}
