//! Operator subspaces of `M_n(ℚ(i))`, stored as sparse reduced row echelon bases
//! over row-major coordinates.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exact::{QMatrix, QScalar};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and nonzero values.
pub type SparseVec = Vec<(usize, QScalar)>;

pub fn sparse_from_dense(v: &[QScalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<QScalar> {
    let mut d = vec![QScalar::zero(); len];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

/// `a - c·b` on sparse vectors.
fn axpy(a: &SparseVec, c: &QScalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(usize::MAX, |e| e.0);
        let kb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(v: &SparseVec, k: usize) -> Option<&QScalar> {
    v.binary_search_by_key(&k, |e| e.0).ok().map(|p| &v[p].1)
}

/// Incrementally maintained reduced row echelon form of a set of vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace {
    len: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        RowSpace { len, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        for (i, x) in v {
            if let Some(&r) = self.pivots.get(i) {
                w = axpy(&w, x, &self.rows[r]);
            }
        }
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let w = self.reduce(v);
        if w.is_empty() {
            return false;
        }
        let inv = w[0].1.inv().expect("nonzero leading entry");
        let w: SparseVec = w.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        let p = w[0].0;
        for row in self.rows.iter_mut() {
            if let Some(c) = lookup(row, p).cloned() {
                *row = axpy(row, &c, &w);
            }
        }
        let at = self.rows.partition_point(|r| r[0].0 < p);
        self.rows.insert(at, w);
        self.pivots = self.rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
        true
    }

    /// Basis of `{x : ⟨row, x⟩ = 0 for every row}` (unconjugated dot product).
    pub fn annihilator(&self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.len - self.rows.len());
        for f in (0..self.len).filter(|c| !self.pivots.contains_key(c)) {
            let mut v: SparseVec = vec![(f, QScalar::one())];
            for row in &self.rows {
                if let Some(c) = lookup(row, f) {
                    v.push((row[0].0, -c));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// A linear subspace of `n × n` complex matrices with Gaussian-rational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    n: usize,
    space: RowSpace,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, space: RowSpace::new(n * n) }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Subspace::zero(n);
        for k in 0..n * n {
            s.space.insert(&vec![(k, QScalar::one())]);
        }
        s
    }

    pub fn scalars(n: usize) -> Self {
        Subspace::span(n, &[QMatrix::identity(n)]).expect("square identity")
    }

    pub fn span(n: usize, mats: &[QMatrix]) -> Result<Self, Error> {
        if let Some(m) = mats.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!("expected {n}x{n} matrix, got {}x{}", m.rows(), m.cols())));
        }
        // exact rational elimination is slow on large-height data; a full rank mod p settles the common full case
        if mats.len() >= n * n {
            let rows: Vec<Vec<QScalar>> = mats.iter().map(|m| m.data().to_vec()).collect();
            if crate::exact::modp::rank_mod_p(&rows) == Some(n * n) {
                return Ok(Subspace::full(n));
            }
        }
        let mut s = Subspace::zero(n);
        for m in mats {
            s.insert(m)?;
        }
        Ok(s)
    }

    /// Accept a basis only if it is already in canonical reduced row echelon form.
    pub fn from_rref_basis(n: usize, mats: &[QMatrix]) -> Result<Self, Error> {
        let s = Subspace::span(n, mats)?;
        if s.dim() != mats.len() || s.basis() != mats {
            return Err(Error::Invalid("subspace basis is not in reduced row echelon form".into()));
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    fn coords(&self, m: &QMatrix) -> Result<SparseVec, Error> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Shape(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                self.n,
                m.rows(),
                m.cols()
            )));
        }
        Ok(sparse_from_dense(m.data()))
    }

    fn to_matrix(&self, v: &SparseVec) -> QMatrix {
        QMatrix::from_vec(self.n, self.n, sparse_to_dense(v, self.n * self.n))
    }

    pub fn insert(&mut self, m: &QMatrix) -> Result<bool, Error> {
        let v = self.coords(m)?;
        if self.dim() == self.n * self.n {
            return Ok(false);
        }
        Ok(self.space.insert(&v))
    }

    pub fn contains(&self, m: &QMatrix) -> bool {
        self.coords(m).map(|v| self.space.contains(&v)).unwrap_or(false)
    }

    /// Canonical basis (the reduced rows reshaped to matrices).
    pub fn basis(&self) -> Vec<QMatrix> {
        self.space.rows().iter().map(|r| self.to_matrix(r)).collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&QMatrix::identity(self.n))
    }

    /// `{X : Tr(A X) = 0 for all A ∈ S}` under the bilinear trace pairing.
    pub fn perp(&self) -> Subspace {
        let n = self.n;
        let mut out = Subspace::zero(n);
        for v in self.space.annihilator() {
            // the annihilator is taken against vec(A); Tr(AX) pairs A_ij with X_ji
            let mut t: SparseVec = v.into_iter().map(|(k, x)| ((k % n) * n + k / n, x)).collect();
            t.sort_by_key(|e| e.0);
            out.space.insert(&t);
        }
        out
    }

    pub fn adjoint(&self) -> Subspace {
        self.map(|m| m.adjoint())
    }

    pub fn transpose(&self) -> Subspace {
        self.map(|m| m.transpose())
    }

    /// Image of the basis under a linear map.
    pub fn map(&self, f: impl Fn(&QMatrix) -> QMatrix) -> Subspace {
        let imgs: Vec<QMatrix> = self.basis().iter().map(f).collect();
        let n = imgs.first().map_or(self.n, QMatrix::rows);
        Subspace::span(n, &imgs).expect("map preserves squareness")
    }

    /// `{P A Q : A ∈ S}`.
    pub fn sandwich(&self, p: &QMatrix, q: &QMatrix) -> Subspace {
        self.map(|a| &(p * a) * q)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.n, o.n);
        let mut s = self.clone();
        for r in o.space.rows() {
            s.space.insert(r);
        }
        s
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        // S ∩ T = (S^⊥ + T^⊥)^⊥
        self.perp().sum(&o.perp()).perp()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.n == o.n && self.space.rows().iter().all(|r| o.space.contains(r))
    }

    pub fn tensor(&self, o: &Subspace) -> Subspace {
        let n = self.n * o.n;
        let mut s = Subspace::zero(n);
        for a in self.basis() {
            for b in o.basis() {
                s.insert(&a.kron(&b)).expect("kron of squares is square");
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        self.basis().iter().all(|b| self.contains(&b.adjoint()))
    }

    /// Closed under multiplication.
    pub fn is_algebra(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| b.iter().all(|y| self.contains(&(x * y))))
    }

    /// A unital *-closed algebra.
    pub fn is_star_algebra(&self) -> bool {
        self.contains_identity() && self.is_symmetric() && self.is_algebra()
    }

    /// `{X : X A = A X for all A ∈ S}`.
    pub fn commutant(&self) -> Subspace {
        let n = self.n;
        let mut eqs = RowSpace::new(n * n);
        for a in self.basis() {
            // (XA - AX)_{ij} = Σ_k X_ik A_kj - A_ik X_kj
            for i in 0..n {
                for j in 0..n {
                    let mut row: BTreeMap<usize, QScalar> = BTreeMap::new();
                    for k in 0..n {
                        let akj = a.get(k, j);
                        if !akj.is_zero() {
                            *row.entry(i * n + k).or_default() += akj;
                        }
                        let aik = a.get(i, k);
                        if !aik.is_zero() {
                            *row.entry(k * n + j).or_default() -= aik;
                        }
                    }
                    let v: SparseVec = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    if !v.is_empty() {
                        eqs.insert(&v);
                    }
                }
            }
        }
        let mut out = Subspace::zero(n);
        for v in eqs.annihilator() {
            out.space.insert(&v);
        }
        out
    }

    /// Entrywise (Schur) product of every element with `t`; `t` must have no zero entry.
    pub fn schur_map(&self, t: &QMatrix) -> Result<Subspace, Error> {
        if t.rows() != self.n || t.cols() != self.n {
            return Err(Error::Shape("Schur multiplier has the wrong shape".into()));
        }
        if t.data().iter().any(QScalar::is_zero) {
            return Err(Error::Invalid("Schur multiplier has a zero entry".into()));
        }
        Ok(self.map(|a| schur(a, t)))
    }

    /// `span{X A Yᵀ : X ∈ self, Y ∈ other}`.
    pub fn sandwich_span2(&self, a: &QMatrix, other: &Subspace) -> Subspace {
        let lefts: Vec<QMatrix> = self.basis().iter().map(|x| x * a).collect();
        let rights: Vec<QMatrix> = other.basis().iter().map(QMatrix::transpose).collect();
        let mut s = Subspace::zero(a.rows());
        for l in &lefts {
            for r in &rights {
                s.insert(&(l * r)).expect("square product");
                if s.dim() == s.n * s.n {
                    return s;
                }
            }
        }
        s
    }

    /// `span{X A Yᵀ : X, Y ∈ self}`.
    pub fn sandwich_span(&self, a: &QMatrix) -> Subspace {
        self.sandwich_span2(a, self)
    }

    /// Block matrices `[[G1, *], [*, G2]]` with free off-diagonal blocks.
    pub fn direct_sum_graph(g1: &Subspace, g2: &Subspace) -> Subspace {
        let (n1, n2) = (g1.n, g2.n);
        let n = n1 + n2;
        let mut s = Subspace::zero(n);
        for b in g1.basis() {
            let mut m = QMatrix::zeros(n, n);
            m.set_block(0, 0, &b);
            s.insert(&m).expect("square");
        }
        for b in g2.basis() {
            let mut m = QMatrix::zeros(n, n);
            m.set_block(n1, n1, &b);
            s.insert(&m).expect("square");
        }
        for i in 0..n1 {
            for j in n1..n {
                s.insert(&QMatrix::matrix_unit(n, i, j)).expect("square");
                s.insert(&QMatrix::matrix_unit(n, j, i)).expect("square");
            }
        }
        s
    }

    /// Whether every element of the subspace is `0`.
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}

/// On-disk form: `{"kind":"subspace","ambient":n,"basis":[[CPX,...],...]}`.
#[derive(Serialize, Deserialize)]
pub struct SubspaceFile {
    pub kind: String,
    pub ambient: usize,
    pub basis: Vec<Vec<QScalar>>,
}

impl SubspaceFile {
    pub fn matrices(&self) -> Result<Vec<QMatrix>, Error> {
        let n = self.ambient;
        if n == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        self.basis
            .iter()
            .map(|b| {
                if b.len() != n * n {
                    Err(Error::Shape(format!("basis element has {} entries, expected {}", b.len(), n * n)))
                } else {
                    Ok(QMatrix::from_vec(n, n, b.clone()))
                }
            })
            .collect()
    }

    /// Span of the listed matrices, in any form.
    pub fn to_subspace(&self) -> Result<Subspace, Error> {
        if self.kind != "subspace" {
            return Err(Error::Invalid(format!("expected kind \"subspace\", found {:?}", self.kind)));
        }
        Subspace::span(self.ambient, &self.matrices()?)
    }
}

impl From<&Subspace> for SubspaceFile {
    fn from(s: &Subspace) -> Self {
        SubspaceFile {
            kind: "subspace".into(),
            ambient: s.n,
            basis: s.basis().into_iter().map(QMatrix::into_data).collect(),
        }
    }
}

// Serialized subspaces inside certificates must already be canonical.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = SubspaceFile::deserialize(d)?;
        let mats = f.matrices().map_err(serde::de::Error::custom)?;
        Subspace::from_rref_basis(f.ambient, &mats).map_err(serde::de::Error::custom)
    }
}

/// Entrywise product.
pub fn schur(a: &QMatrix, t: &QMatrix) -> QMatrix {
    let data = a.data().iter().zip(t.data()).map(|(x, y)| x * y).collect();
    QMatrix::from_vec(a.rows(), a.cols(), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_shortcut_agrees_with_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.random_range(1..=3);
            let k = n * n + rng.random_range(0..3);
            let mats: Vec<QMatrix> = (0..k)
                .map(|_| QMatrix::from_vec(n, n, (0..n * n).map(|_| QScalar::gauss(rng.random_range(-1..=1), rng.random_range(-1..=1))).collect()))
                .collect();
            let mut slow = Subspace::zero(n);
            for x in &mats {
                slow.insert(x).unwrap();
            }
            assert_eq!(Subspace::span(n, &mats).unwrap(), slow);
        }
    }

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_ints(rows)
    }

    #[test]
    fn perp_dimension_and_pairing() {
        let s = Subspace::span(2, &[m(&[&[1, 2], &[0, 0]]), m(&[&[0, 0], &[3, 1]])]).unwrap();
        let p = s.perp();
        assert_eq!(p.dim(), 2);
        for a in s.basis() {
            for b in p.basis() {
                assert!(a.trace_pairing(&b).is_zero());
            }
        }
        assert_eq!(p.perp(), s);
    }

    #[test]
    fn rref_basis_validation() {
        let s = Subspace::span(2, &[m(&[&[2, 2], &[0, 0]]), m(&[&[0, 1], &[0, 0]])]).unwrap();
        assert!(Subspace::from_rref_basis(2, &s.basis()).is_ok());
        assert!(Subspace::from_rref_basis(2, &[m(&[&[2, 0], &[0, 0]])]).is_err());
    }

    #[test]
    fn commutant_of_full_algebra_is_scalars() {
        assert_eq!(Subspace::full(3).commutant(), Subspace::scalars(3));
        let diag = Subspace::span(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]])]).unwrap();
        assert_eq!(diag.commutant(), diag);
        assert!(diag.is_star_algebra());
    }

    #[test]
    fn direct_sum_and_sandwich() {
        let full = Subspace::full(2);
        assert_eq!(Subspace::direct_sum_graph(&full, &full), Subspace::full(4));
        let id = Subspace::scalars(2);
        let ds = Subspace::direct_sum_graph(&id, &id);
        assert_eq!(ds.dim(), 10);
        assert!(ds.is_symmetric() && ds.contains_identity());
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(id.sandwich_span(&a), Subspace::span(2, &[a.clone()]).unwrap());
        assert_eq!(full.sandwich_span(&QMatrix::identity(2)), full);
        let ones = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(full.schur_map(&ones).unwrap(), full);
        assert!(full.schur_map(&m(&[&[1, 0], &[1, 1]])).is_err());
    }

    #[test]
    fn intersection_and_tensor() {
        let a = Subspace::span(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 1], &[0, 0]])]).unwrap();
        let b = Subspace::span(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[1, 0]])]).unwrap();
        assert_eq!(a.intersect(&b).dim(), 1);
        assert_eq!(a.tensor(&b).dim(), 4);
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
