//! Channels with a prescribed noncommutative graph.
//!
//! For a symmetric unital `L` with a positive basis `A_i` summing to `I` and
//! unit vectors `ψ_i ∈ ℂ^m` with independent projectors, the channel
//! `Φ(ρ) = Σ c_ij A_i^{1/2} ρ A_j^{1/2} ⊗ |i⟩⟨j|`, `c_ij = ⟨ψ_j|ψ_i⟩`, has Kraus
//! operators `K_e = Σ_i ⟨e|ψ_i⟩ A_i^{1/2} ⊗ |i⟩` (`e = 1..m`). Hence
//!
//! `K_e† K_f = Σ_i ⟨ψ_i|e⟩⟨f|ψ_i⟩ A_i = Σ_i Tr(|ψ_i⟩⟨ψ_i| · |e⟩⟨f|) A_i`,
//!
//! and because the projectors are independent the functionals
//! `X ↦ Tr(|ψ_i⟩⟨ψ_i| X)` are independent, so `span{K_e†K_f} = span{A_i}`.
//! Graph equality therefore reduces to exact statements about `A_i` and `ψ_i`
//! and no square root is ever taken exactly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::float::{float_rank, to_float, FMatrix, C64};
use crate::exact::{is_psd_hermitian, rank, QMatrix, QScalar};
use crate::subspace::Subspace;

/// Exact data of a pseudo-diagonal channel realizing a graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudoDiagonalSpec {
    pub n: usize,
    pub d: usize,
    pub positive_basis: Vec<QMatrix>,
    pub m: usize,
    pub psi: Vec<Vec<QScalar>>,
    /// `c_ij = ⟨ψ_j|ψ_i⟩`, the coefficient of `|i⟩⟨j|`.
    pub gram: QMatrix,
}

fn require_graph_shape(l: &Subspace) -> Result<(), Error> {
    if !l.is_symmetric() {
        return Err(Error::Invalid("subspace is not symmetric".into()));
    }
    if !l.contains_identity() {
        return Err(Error::Invalid("subspace does not contain the identity".into()));
    }
    Ok(())
}

/// Gershgorin bound on the operator norm: the largest row sum of `|re| + |im|`.
fn norm_bound(x: &QMatrix) -> QScalar {
    let mut best = num_rational::BigRational::from_integer(0.into());
    for i in 0..x.rows() {
        let mut s = num_rational::BigRational::from_integer(0.into());
        for j in 0..x.cols() {
            s += x.get(i, j).abs_bound();
        }
        if s > best {
            best = s;
        }
    }
    QScalar::from_rational(best)
}

/// Hermitian spanning set of `L` beginning with `I`.
fn hermitian_basis(l: &Subspace) -> Vec<QMatrix> {
    let n = l.ambient();
    let mut span = Subspace::zero(n);
    let mut out = Vec::with_capacity(l.dim());
    let half = QScalar::frac(1, 2);
    let half_i = &half * &QScalar::i();
    let mut candidates = vec![QMatrix::identity(n)];
    for b in l.basis() {
        let adj = b.adjoint();
        candidates.push((&b + &adj).scale(&half));
        // (B − B†)/(2i)
        candidates.push((&b - &adj).scale(&-&half_i));
    }
    for h in candidates {
        if h.is_zero() {
            continue;
        }
        if span.insert(&h).expect("square") {
            out.push(h);
            if out.len() == l.dim() {
                break;
            }
        }
    }
    out
}

/// PSD basis of `L` summing to `I`. Every element is re-checked exactly.
pub fn positive_basis(l: &Subspace) -> Result<Vec<QMatrix>, Error> {
    require_graph_shape(l)?;
    let n = l.ambient();
    let id = QMatrix::identity(n);
    let herm = hermitian_basis(l);
    let d = herm.len();
    if d == 1 {
        return Ok(vec![id]);
    }
    // Ã_i = I + X_i / (2‖X_i‖) lies in [I/2, 3I/2]
    let tilde: Vec<QMatrix> = herm[1..]
        .iter()
        .map(|x| {
            let scale = (&norm_bound(x) * &QScalar::from_int(2)).inv().expect("nonzero Hermitian");
            &id + &x.scale(&scale)
        })
        .collect();
    // Σ Ã_i ≤ 3(d−1)/2 · I, so M = 2(d−1) keeps A₁ ≥ I/4
    let m_inv = QScalar::frac(1, 2 * (d as i64 - 1));
    let mut out = Vec::with_capacity(d);
    let mut first = id.clone();
    for t in &tilde {
        first = &first - &t.scale(&m_inv);
    }
    out.push(first);
    out.extend(tilde.iter().map(|t| t.scale(&m_inv)));
    check_positive_basis(l, &out)?;
    Ok(out)
}

/// `Σ A_i = I`, each `A_i ⪰ 0`, and `span{A_i} = L` with `A_i` independent.
pub fn check_positive_basis(l: &Subspace, basis: &[QMatrix]) -> Result<(), Error> {
    let n = l.ambient();
    let mut sum = QMatrix::zeros(n, n);
    for a in basis {
        if !is_psd_hermitian(a)? {
            return Err(Error::Invalid("basis element is not positive semidefinite".into()));
        }
        sum = &sum + a;
    }
    if sum != QMatrix::identity(n) {
        return Err(Error::Invalid("basis does not sum to the identity".into()));
    }
    let span = Subspace::span(n, basis)?;
    if span.dim() != basis.len() || &span != l {
        return Err(Error::Invalid("positive family is not a basis of the subspace".into()));
    }
    Ok(())
}

/// Deterministic rational unit vectors of `ℂ^m` with independent projectors:
/// `e_k`, then `(3e_k + 4e_l)/5`, then `(3e_k + 4i e_l)/5` for `k < l`.
pub fn unit_vectors(m: usize) -> Vec<Vec<QScalar>> {
    let mut out = Vec::with_capacity(m * m);
    let e = |k: usize| {
        let mut v = vec![QScalar::zero(); m];
        v[k] = QScalar::one();
        v
    };
    for k in 0..m {
        out.push(e(k));
    }
    for coeff in [QScalar::frac(4, 5), &QScalar::gauss(0, 4) * &QScalar::frac(1, 5)] {
        for k in 0..m {
            for l in k + 1..m {
                let mut v = vec![QScalar::zero(); m];
                v[k] = QScalar::frac(3, 5);
                v[l] = coeff.clone();
                out.push(v);
            }
        }
    }
    out
}

fn inner(a: &[QScalar], b: &[QScalar]) -> QScalar {
    a.iter().zip(b).fold(QScalar::zero(), |acc, (x, y)| &acc + &(&x.conj() * y))
}

/// Rows `vec(|ψ_i⟩⟨ψ_i|)`.
fn projector_rows(psi: &[Vec<QScalar>]) -> QMatrix {
    let rows = psi
        .iter()
        .map(|p| {
            let c = QMatrix::column(p);
            (&c * &c.adjoint()).into_data()
        })
        .collect();
    QMatrix::from_rows(rows).expect("equal lengths")
}

/// Smallest `m` with `d ≤ m²`.
pub fn environment_dim(d: usize) -> usize {
    let mut m = 0;
    while m * m < d {
        m += 1;
    }
    m
}

/// Pseudo-diagonal channel data for a symmetric unital subspace.
pub fn synthesize(l: &Subspace) -> Result<PseudoDiagonalSpec, Error> {
    let positive_basis = positive_basis(l)?;
    let d = positive_basis.len();
    let m = environment_dim(d);
    let psi: Vec<Vec<QScalar>> = unit_vectors(m).into_iter().take(d).collect();
    let mut gram = QMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram.set(i, j, inner(&psi[j], &psi[i]));
        }
    }
    let spec = PseudoDiagonalSpec { n: l.ambient(), d, positive_basis, m, psi, gram };
    spec.validate()?;
    if &spec.graph() != l {
        return Err(Error::Inconsistent("synthesized graph differs from the target".into()));
    }
    Ok(spec)
}

impl PseudoDiagonalSpec {
    /// Exact re-check of every invariant.
    pub fn validate(&self) -> Result<(), Error> {
        let (n, d, m) = (self.n, self.d, self.m);
        if self.positive_basis.len() != d || self.psi.len() != d {
            return Err(Error::Shape("basis and vector counts differ from d".into()));
        }
        if m != environment_dim(d) {
            return Err(Error::Invalid(format!("environment dimension {m} is not minimal for d = {d}")));
        }
        let l = Subspace::span(n, &self.positive_basis)?;
        check_positive_basis(&l, &self.positive_basis)?;
        for p in &self.psi {
            if p.len() != m || !inner(p, p).is_one() {
                return Err(Error::Invalid("vectors must be unit vectors in C^m".into()));
            }
        }
        if rank(&projector_rows(&self.psi)) != d {
            return Err(Error::Invalid("projectors |ψ_i⟩⟨ψ_i| are dependent".into()));
        }
        if !self.gram.is_hermitian() || (0..d).any(|i| !self.gram.get(i, i).is_one()) {
            return Err(Error::Invalid("Gram matrix must be Hermitian with unit diagonal".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if self.gram.get(i, j) != &inner(&self.psi[j], &self.psi[i]) {
                    return Err(Error::Invalid("Gram matrix differs from the vectors".into()));
                }
            }
        }
        Ok(())
    }

    /// `span{K_e† K_f}` from the closed form `Σ_i ⟨ψ_i|e⟩⟨f|ψ_i⟩ A_i`.
    pub fn graph(&self) -> Subspace {
        let mut g = Subspace::zero(self.n);
        for e in 0..self.m {
            for f in 0..self.m {
                let mut k = QMatrix::zeros(self.n, self.n);
                for (p, a) in self.psi.iter().zip(&self.positive_basis) {
                    let c = &p[e].conj() * &p[f];
                    if !c.is_zero() {
                        k = &k + &a.scale(&c);
                    }
                }
                g.insert(&k).expect("square");
            }
        }
        g
    }

    /// `K_e† K_e = Σ_i |⟨e|ψ_i⟩|² A_i`; its rank is the rank of `K_e`.
    pub fn kraus_gram(&self, e: usize) -> QMatrix {
        let mut k = QMatrix::zeros(self.n, self.n);
        for (p, a) in self.psi.iter().zip(&self.positive_basis) {
            k = &k + &a.scale(&QScalar::from_rational(p[e].norm_sqr()));
        }
        k
    }

    pub fn kraus_ranks(&self) -> Vec<usize> {
        (0..self.m).map(|e| rank(&self.kraus_gram(e))).collect()
    }

    /// Dimension of `span{K_e}`: the rank of the `m × d` matrix `[⟨e|ψ_i⟩]`.
    pub fn choi_rank(&self) -> usize {
        let mut t = QMatrix::zeros(self.m, self.d);
        for (i, p) in self.psi.iter().enumerate() {
            for e in 0..self.m {
                t.set(e, i, p[e].clone());
            }
        }
        rank(&t)
    }

    /// The output dimension bound `m·n`.
    pub fn output_bound(&self) -> usize {
        self.m * self.n
    }

    /// `Φ̂(|φ⟩⟨ψ|) = Σ_i ⟨ψ|A_i|φ⟩ |ψ_i⟩⟨ψ_i|` vanishes iff every `⟨ψ|A_i|φ⟩` does.
    pub fn outputs_orthogonal(&self, phi: &[QScalar], psi: &[QScalar]) -> Result<bool, Error> {
        if phi.len() != self.n || psi.len() != self.n {
            return Err(Error::Shape(format!("vectors must have length {}", self.n)));
        }
        let (p, q) = (QMatrix::column(phi), QMatrix::column(psi));
        let qa = q.adjoint();
        Ok(self.positive_basis.iter().all(|a| (&(&qa * a) * &p).get(0, 0).is_zero()))
    }
}

/// Floating-point Kraus family for a spec, with diagnostics.
#[derive(Clone, Debug)]
pub struct NumericKraus {
    pub kraus: Vec<FMatrix>,
    /// `max |Σ K†K − I|` entrywise.
    pub completeness_residual: f64,
    /// Numerical rank of `span{K_e†K_f} ∪ {A_i}` and of `{A_i}` alone.
    pub joint_rank: usize,
    pub basis_rank: usize,
}

fn psd_sqrt(a: &FMatrix) -> FMatrix {
    let eig = a.clone().symmetric_eigen();
    let vals = eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&vals) * eig.eigenvectors.adjoint()
}

/// `K_e = Σ_i ⟨e|ψ_i⟩ (A_i^{1/2} ⊗ |i⟩)` in floating point; output index `(a, i) ↦ a·d + i`.
pub fn numeric_kraus(spec: &PseudoDiagonalSpec, rank_tolerance: f64) -> NumericKraus {
    let (n, d, m) = (spec.n, spec.d, spec.m);
    let roots: Vec<FMatrix> = spec.positive_basis.iter().map(|a| psd_sqrt(&to_float(a))).collect();
    let mut kraus = Vec::with_capacity(m);
    for e in 0..m {
        let mut k = FMatrix::zeros(n * d, n);
        for (i, (p, r)) in spec.psi.iter().zip(&roots).enumerate() {
            let (re, im) = p[e].to_f64_pair();
            let c = C64::new(re, im);
            for a in 0..n {
                for b in 0..n {
                    k[(a * d + i, b)] += c * r[(a, b)];
                }
            }
        }
        kraus.push(k);
    }
    let mut sum = FMatrix::zeros(n, n);
    for k in &kraus {
        sum += k.adjoint() * k;
    }
    let completeness_residual = (sum - FMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let vecs = |ms: &[FMatrix]| -> Vec<Vec<C64>> { ms.iter().map(|x| x.transpose().iter().cloned().collect()).collect() };
    let basis: Vec<FMatrix> = spec.positive_basis.iter().map(to_float).collect();
    let mut products = Vec::new();
    for a in &kraus {
        for b in &kraus {
            products.push(a.adjoint() * b);
        }
    }
    let stack = |rows: Vec<Vec<C64>>| FMatrix::from_fn(rows.len(), n * n, |i, j| rows[i][j]);
    let basis_rank = float_rank(&stack(vecs(&basis)), rank_tolerance);
    let mut all = vecs(&basis);
    all.extend(vecs(&products));
    let joint_rank = float_rank(&stack(all), rank_tolerance);
    NumericKraus { kraus, completeness_residual, joint_rank, basis_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::l_theorem1;

    #[test]
    fn scalar_graph_gives_identity_channel() {
        let s = synthesize(&Subspace::scalars(3)).unwrap();
        assert_eq!((s.d, s.m), (1, 1));
        assert_eq!(s.positive_basis, vec![QMatrix::identity(3)]);
        let nk = numeric_kraus(&s, 1e-8);
        assert_eq!(nk.completeness_residual, 0.0);
    }

    #[test]
    fn full_m2_positive_basis() {
        let b = positive_basis(&Subspace::full(2)).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn theorem1_synthesis() {
        let s = synthesize(&l_theorem1()).unwrap();
        assert_eq!((s.n, s.d, s.m, s.output_bound()), (4, 8, 3, 12));
        assert_eq!(s.choi_rank(), 3);
        let nk = numeric_kraus(&s, 1e-8);
        assert!(nk.completeness_residual < 1e-10, "{}", nk.completeness_residual);
        assert_eq!((nk.basis_rank, nk.joint_rank), (8, 8));
    }

    #[test]
    fn asymmetric_subspace_refused() {
        let l = Subspace::span(2, &[QMatrix::identity(2), QMatrix::matrix_unit(2, 0, 1)]).unwrap();
        assert!(synthesize(&l).is_err());
    }
}
