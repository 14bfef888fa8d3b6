use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exact::field::Field;
use crate::exact::scalar::QScalar;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type QMatrix = Matrix<QScalar>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = F::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Square diagonal matrix.
    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (k, e) in entries.iter().enumerate() {
            m.data[k * n + k] = e.clone();
        }
        m
    }

    /// Column vector.
    pub fn column(entries: &[F]) -> Self {
        Matrix::from_vec(entries.len(), 1, entries.to_vec())
    }

    /// `e_k` of length `n`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Matrix::zeros(n, 1);
        v.data[k] = F::one();
        v
    }

    pub fn from_q(m: &QMatrix) -> Self {
        Matrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(F::from_q).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn into_data(self) -> Vec<F> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.times(s))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(F::conjugate)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for k in 0..self.rows.min(self.cols) {
            t = t.plus(self.get(k, k));
        }
        t
    }

    /// `Σ_ij A_ij B_ij`, i.e. `Tr(A Bᵀ)`.
    pub fn frobenius_bilinear(&self, o: &Self) -> F {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut t = F::zero();
        for (a, b) in self.data.iter().zip(&o.data) {
            if !a.is_zero() && !b.is_zero() {
                t = t.plus(&a.times(b));
            }
        }
        t
    }

    /// The bilinear trace pairing `Tr(A B)`.
    pub fn trace_pairing(&self, o: &Self) -> F {
        assert_eq!((self.rows, self.cols), (o.cols, o.rows));
        let mut t = F::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                let b = o.get(j, i);
                if !a.is_zero() && !b.is_zero() {
                    t = t.plus(&a.times(b));
                }
            }
        }
        t
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut m = Matrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            m.data[(i * o.rows + k) * c + j * o.cols + l] = a.times(b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_vec(rows.len(), cols.len(), data)
    }

    /// Copy of the rectangular block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.submatrix(&rs, &cs)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Matrix::zeros(a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    /// Flatten row-major into a column vector.
    pub fn vec_rowmajor(&self) -> Self {
        Matrix::from_vec(self.rows * self.cols, 1, self.data.clone())
    }

    /// Inverse of [`Matrix::vec_rowmajor`].
    pub fn unvec_rowmajor(v: &Self, rows: usize, cols: usize) -> Self {
        assert_eq!(v.data.len(), rows * cols);
        Matrix::from_vec(rows, cols, v.data.clone())
    }

    /// `x yᵀ` for column vectors `x`, `y`.
    pub fn outer_t(x: &Self, y: &Self) -> Self {
        let mut m = Matrix::zeros(x.data.len(), y.data.len());
        for (i, a) in x.data.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.data.iter().enumerate() {
                m.data[i * y.data.len() + j] = a.times(b);
            }
        }
        m
    }

    /// `yᵀ A x` for column vectors.
    pub fn bilinear(&self, y: &Self, x: &Self) -> F {
        let ax = self * x;
        let mut t = F::zero();
        for (a, b) in y.data.iter().zip(&ax.data) {
            t = t.plus(&a.times(b));
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, Error> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self + o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, Error> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self * o)
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(F::negate)
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut m = Matrix::<F>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        m.data[idx] = m.data[idx].plus(&a.times(b));
                    }
                }
            }
        }
        m
    }
}

impl QMatrix {
    /// Parse rows of scalar strings.
    pub fn parse_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, Error> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| QScalar::parse(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed)
    }

    /// Build from small Gaussian-integer pairs `(re, im)`.
    pub fn from_gauss(rows: &[&[(i64, i64)]]) -> Self {
        let r: Vec<Vec<QScalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&(a, b)| QScalar::gauss(a, b)).collect())
            .collect();
        Matrix::from_rows(r).expect("rectangular literal")
    }

    /// Build from small real integers.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<QScalar>> =
            rows.iter().map(|row| row.iter().map(|&a| QScalar::from_int(a)).collect()).collect();
        Matrix::from_rows(r).expect("rectangular literal")
    }

    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(QScalar::to_text).collect()).collect()
    }

    /// Matrix unit `E_ij` of size `n × n`.
    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, QScalar::one());
        m
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<QScalar>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_trace() {
        let a = QMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = QMatrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 0), &QScalar::from_int(3));
        assert_eq!(k.trace(), QScalar::from_int(10));
    }

    #[test]
    fn trace_pairing_is_bilinear_and_unconjugated() {
        let a = QMatrix::from_gauss(&[&[(0, 1), (0, 0)], &[(0, 0), (0, 0)]]);
        assert_eq!(a.trace_pairing(&a), QScalar::from_int(-1));
        let x = QMatrix::column(&[QScalar::one(), QScalar::i()]);
        let y = QMatrix::column(&[QScalar::from_int(2), QScalar::zero()]);
        let m = QMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.bilinear(&y, &x), m.trace_pairing(&QMatrix::outer_t(&x, &y)));
    }

    #[test]
    fn vec_round_trip() {
        let a = QMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(QMatrix::unvec_rowmajor(&a.vec_rowmajor(), 2, 3), a);
    }
}
