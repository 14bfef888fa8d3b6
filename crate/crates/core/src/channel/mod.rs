//! Quantum channels given by Kraus families with Gaussian-rational entries.

pub mod random;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{rank, QMatrix, QScalar};
use crate::subspace::Subspace;

/// `ρ ↦ Σ V_k ρ V_k†` with `Σ V_k†V_k = I` checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<QMatrix>,
}

/// On-disk form: `{"kind":"channel","dim_in":n,"dim_out":m,"kraus":[…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub kind: String,
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<QMatrix>,
}

fn completeness_defect(dim_in: usize, kraus: &[QMatrix]) -> QMatrix {
    let mut s = QMatrix::zeros(dim_in, dim_in);
    for v in kraus {
        s = &s + &(&v.adjoint() * v);
    }
    &s - &QMatrix::identity(dim_in)
}

impl KrausChannel {
    pub fn new(kraus: Vec<QMatrix>) -> Result<Self, Error> {
        let first = kraus.first().ok_or_else(|| Error::Invalid("Kraus family is empty".into()))?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if kraus.iter().any(|v| v.rows() != dim_out || v.cols() != dim_in) {
            return Err(Error::Shape("Kraus operators have different shapes".into()));
        }
        if !completeness_defect(dim_in, &kraus).is_zero() {
            return Err(Error::Invalid("Kraus operators do not satisfy Σ V†V = I".into()));
        }
        Ok(KrausChannel { dim_in, dim_out, kraus })
    }

    /// Whether the family is a valid channel.
    pub fn validate(kraus: &[QMatrix]) -> bool {
        KrausChannel::new(kraus.to_vec()).is_ok()
    }

    pub fn identity(n: usize) -> Self {
        KrausChannel { dim_in: n, dim_out: n, kraus: vec![QMatrix::identity(n)] }
    }

    /// Kraus `{e_11, …, e_nn}`.
    pub fn dephasing(n: usize) -> Self {
        let kraus = (0..n).map(|i| QMatrix::matrix_unit(n, i, i)).collect();
        KrausChannel { dim_in: n, dim_out: n, kraus }
    }

    /// `ρ ↦ Tr ρ · e_11` on `M_n → M_1`: every output coincides.
    pub fn trace(n: usize) -> Self {
        let kraus = (0..n).map(|j| QMatrix::unit(n, j).transpose()).collect();
        KrausChannel { dim_in: n, dim_out: 1, kraus }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[QMatrix] {
        &self.kraus
    }

    fn check_input(&self, rho: &QMatrix) -> Result<(), Error> {
        if rho.rows() != self.dim_in || rho.cols() != self.dim_in {
            return Err(Error::Shape(format!("input must be {0}×{0}", self.dim_in)));
        }
        Ok(())
    }

    pub fn apply(&self, rho: &QMatrix) -> Result<QMatrix, Error> {
        self.check_input(rho)?;
        let mut out = QMatrix::zeros(self.dim_out, self.dim_out);
        for v in &self.kraus {
            out = &out + &(&(v * rho) * &v.adjoint());
        }
        Ok(out)
    }

    /// `[Tr(V_k ρ V_l†)]_{k,l}`.
    pub fn complementary(&self, rho: &QMatrix) -> Result<QMatrix, Error> {
        self.check_input(rho)?;
        let d = self.kraus.len();
        let mut out = QMatrix::zeros(d, d);
        let vr: Vec<QMatrix> = self.kraus.iter().map(|v| v * rho).collect();
        for k in 0..d {
            for l in 0..d {
                out.set(k, l, (&vr[k] * &self.kraus[l].adjoint()).trace());
            }
        }
        Ok(out)
    }

    /// Kraus family of the complementary channel: `W_b` has row `k` equal to row `b` of `V_k`.
    pub fn complementary_channel(&self) -> KrausChannel {
        let d = self.kraus.len();
        let kraus = (0..self.dim_out)
            .map(|b| {
                let mut w = QMatrix::zeros(d, self.dim_in);
                for (k, v) in self.kraus.iter().enumerate() {
                    w.set_block(k, 0, &v.block(b, 0, 1, self.dim_in));
                }
                w
            })
            .collect();
        KrausChannel { dim_in: self.dim_in, dim_out: d, kraus }
    }

    /// `span{V_j† V_k}`.
    pub fn graph(&self) -> Subspace {
        let adj: Vec<QMatrix> = self.kraus.iter().map(QMatrix::adjoint).collect();
        let products: Vec<QMatrix> = adj.iter().flat_map(|a| self.kraus.iter().map(move |v| a * v)).collect();
        Subspace::span(self.dim_in, &products).expect("square products")
    }

    /// Dimension of the span of the Kraus operators.
    pub fn choi_rank(&self) -> usize {
        let rows: Vec<Vec<QScalar>> = self.kraus.iter().map(|v| v.data().to_vec()).collect();
        rank(&QMatrix::from_rows(rows).expect("equal shapes"))
    }

    /// `Σ_{ij} e_ij ⊗ Φ(e_ij)`.
    pub fn choi_matrix(&self) -> QMatrix {
        let n = self.dim_in;
        let mut c = QMatrix::zeros(n * self.dim_out, n * self.dim_out);
        for i in 0..n {
            for j in 0..n {
                let out = self.apply(&QMatrix::matrix_unit(n, i, j)).expect("shape");
                c = &c + &QMatrix::matrix_unit(n, i, j).kron(&out);
            }
        }
        c
    }

    pub fn tensor(&self, o: &KrausChannel) -> KrausChannel {
        let kraus = self.kraus.iter().flat_map(|a| o.kraus.iter().map(move |b| a.kron(b))).collect();
        KrausChannel { dim_in: self.dim_in * o.dim_in, dim_out: self.dim_out * o.dim_out, kraus }
    }

    /// Kraus concatenation `{[V_k, 0]} ∪ {[0, W_l]}` into a shared output of
    /// dimension `max(m₁, m₂)`: input `n₁ + n₂`, environment `d₁ + d₂`.
    pub fn direct_sum(&self, o: &KrausChannel) -> KrausChannel {
        let n = self.dim_in + o.dim_in;
        let m = self.dim_out.max(o.dim_out);
        let mut kraus = Vec::with_capacity(self.kraus.len() + o.kraus.len());
        for v in &self.kraus {
            let mut k = QMatrix::zeros(m, n);
            k.set_block(0, 0, v);
            kraus.push(k);
        }
        for w in &o.kraus {
            let mut k = QMatrix::zeros(m, n);
            k.set_block(0, self.dim_in, w);
            kraus.push(k);
        }
        KrausChannel { dim_in: n, dim_out: m, kraus }
    }

    /// `supp Φ(|φ⟩⟨φ|) ⊥ supp Φ(|ψ⟩⟨ψ|)`, decided by `Φ̂(|φ⟩⟨ψ|) = 0`, i.e.
    /// `⟨ψ|V_l†V_k|φ⟩ = 0` for all `k, l`.
    pub fn outputs_orthogonal(&self, phi: &[QScalar], psi: &[QScalar]) -> Result<bool, Error> {
        if phi.len() != self.dim_in || psi.len() != self.dim_in {
            return Err(Error::Shape(format!("vectors must have length {}", self.dim_in)));
        }
        if phi.iter().all(QScalar::is_zero) || psi.iter().all(QScalar::is_zero) {
            return Err(Error::Invalid("vectors must be nonzero".into()));
        }
        let (p, q) = (QMatrix::column(phi), QMatrix::column(psi));
        let vp: Vec<QMatrix> = self.kraus.iter().map(|v| v * &p).collect();
        let vq: Vec<QMatrix> = self.kraus.iter().map(|v| (v * &q).adjoint()).collect();
        Ok(vq.iter().all(|a| vp.iter().all(|b| (a * b).get(0, 0).is_zero())))
    }

    pub fn to_file(&self) -> ChannelFile {
        ChannelFile { kind: "channel".into(), dim_in: self.dim_in, dim_out: self.dim_out, kraus: self.kraus.clone() }
    }

    pub fn from_file(f: ChannelFile) -> Result<Self, Error> {
        if f.kind != "channel" {
            return Err(Error::Parse(format!("expected kind \"channel\", got {:?}", f.kind)));
        }
        let ch = KrausChannel::new(f.kraus)?;
        if ch.dim_in != f.dim_in || ch.dim_out != f.dim_out {
            return Err(Error::Shape("declared dimensions differ from the Kraus shapes".into()));
        }
        Ok(ch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> QScalar {
        QScalar::from_int(a)
    }

    #[test]
    fn identity_and_dephasing() {
        let rho = QMatrix::from_gauss(&[&[(1, 0), (2, 1)], &[(2, -1), (3, 0)]]);
        assert_eq!(KrausChannel::identity(2).apply(&rho).unwrap(), rho);
        let deph = KrausChannel::dephasing(2);
        assert_eq!(deph.apply(&rho).unwrap(), QMatrix::diag(&[q(1), q(3)]));
        assert_eq!(deph.complementary(&rho).unwrap(), QMatrix::diag(&[q(1), q(3)]));
        assert_eq!(KrausChannel::identity(2).complementary(&rho).unwrap(), QMatrix::diag(&[q(4)]));
        assert_eq!(deph.choi_rank(), 2);
        assert_eq!(rank(&deph.choi_matrix()), 2);
        assert_eq!(deph.graph().dim(), 2);
        assert_eq!(KrausChannel::trace(3).graph().dim(), 9);
    }

    #[test]
    fn incomplete_family_rejected() {
        assert!(!KrausChannel::validate(&[QMatrix::matrix_unit(2, 0, 0)]));
        assert!(KrausChannel::new(vec![]).is_err());
    }

    #[test]
    fn orthogonal_outputs() {
        let e1 = vec![q(1), q(0)];
        let e2 = vec![q(0), q(1)];
        let mixed = vec![QScalar::frac(3, 5), QScalar::frac(4, 5)];
        let id = KrausChannel::identity(2);
        assert!(id.outputs_orthogonal(&e1, &e2).unwrap());
        assert!(!id.outputs_orthogonal(&e1, &mixed).unwrap());
        assert!(KrausChannel::dephasing(2).outputs_orthogonal(&e1, &e2).unwrap());
    }

    #[test]
    fn complementary_kraus_matches_evaluator() {
        let ch = KrausChannel::dephasing(2).tensor(&KrausChannel::identity(2));
        let rho = QMatrix::from_ints(&[&[1, 2, 0, 1], &[2, 1, 1, 0], &[0, 1, 3, 2], &[1, 0, 2, 1]]);
        let comp = ch.complementary_channel();
        assert_eq!(comp.apply(&rho).unwrap(), ch.complementary(&rho).unwrap());
        assert!(KrausChannel::validate(comp.kraus()));
    }

    #[test]
    fn direct_sum_is_a_channel() {
        let s = KrausChannel::dephasing(2).direct_sum(&KrausChannel::identity(3));
        assert!(KrausChannel::validate(s.kraus()));
        assert_eq!((s.dim_in(), s.dim_out(), s.kraus().len()), (5, 3, 3));
    }
}
