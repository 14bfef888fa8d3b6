//! Zero-error positivity for Bosonic Gaussian channels from their finite matrix data.
//!
//! Only `(K, l, α)` and the symplectic forms are represented. `C̄₀ > 0` exactly
//! when `ker α ≠ {0}`, and `Q̄₀ > 0` exactly when `Δ_B` does not vanish on `ker α`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{is_psd_hermitian, kernel, QMatrix, QScalar};

/// Per-mode `[[0, 1], [−1, 0]]`, coordinates ordered `(q₁, p₁, q₂, p₂, …)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    pub s: usize,
    pub delta: QMatrix,
}

pub fn standard_symplectic(s: usize) -> SymplecticForm {
    let mut delta = QMatrix::zeros(2 * s, 2 * s);
    for k in 0..s {
        delta.set(2 * k, 2 * k + 1, QScalar::one());
        delta.set(2 * k + 1, 2 * k, QScalar::from_int(-1));
    }
    SymplecticForm { s, delta }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub s_a: usize,
    pub s_b: usize,
    /// `2s_A × 2s_B`, mapping `Z_B → Z_A`.
    #[serde(rename = "K")]
    pub k: QMatrix,
    /// Displacement row; unused by the criteria.
    pub l: Vec<QScalar>,
    pub alpha: QMatrix,
}

/// On-disk form, tagged with `"kind": "gaussian"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussianFile {
    pub kind: String,
    #[serde(flatten)]
    pub spec: GaussianSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GaussianCapacity {
    Zero,
    /// Positive zero-error capacities of Gaussian channels are infinite.
    PositiveInfinite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianClassification {
    pub cbar0: GaussianCapacity,
    pub qbar0: GaussianCapacity,
    pub kernel_dim: usize,
    /// A pair of kernel basis indices with `z₁ᵀ Δ_B z₂ ≠ 0`, when there is one.
    pub symplectic_pair: Option<(usize, usize)>,
}

fn real_matrix(m: &QMatrix) -> bool {
    m.data().iter().all(QScalar::is_real)
}

impl GaussianSpec {
    pub fn check_shapes(&self) -> Result<(), Error> {
        let (a, b) = (2 * self.s_a, 2 * self.s_b);
        if self.s_a == 0 || self.s_b == 0 {
            return Err(Error::Shape("mode counts must be positive".into()));
        }
        if self.k.rows() != a || self.k.cols() != b {
            return Err(Error::Shape(format!("K must be {a}×{b}")));
        }
        if self.alpha.rows() != b || self.alpha.cols() != b {
            return Err(Error::Shape(format!("alpha must be {b}×{b}")));
        }
        if self.l.len() != b {
            return Err(Error::Shape(format!("l must have length {b}")));
        }
        if !real_matrix(&self.k) || !real_matrix(&self.alpha) || !self.l.iter().all(QScalar::is_real) {
            return Err(Error::Invalid("Gaussian data must be real".into()));
        }
        if self.alpha.transpose() != self.alpha {
            return Err(Error::Invalid("alpha is not symmetric".into()));
        }
        Ok(())
    }

    /// `Δ_B − Kᵀ Δ_A K`.
    pub fn commutator_defect(&self) -> QMatrix {
        let da = standard_symplectic(self.s_a).delta;
        let db = standard_symplectic(self.s_b).delta;
        &db - &(&(&self.k.transpose() * &da) * &self.k)
    }

    /// Both `α ∓ (i/2)(Δ_B − KᵀΔ_A K)` positive semidefinite.
    pub fn validate(&self) -> Result<bool, Error> {
        self.check_shapes()?;
        let half_i = &QScalar::i() * &QScalar::frac(1, 2);
        let term = self.commutator_defect().scale(&half_i);
        Ok(is_psd_hermitian(&(&self.alpha - &term))? && is_psd_hermitian(&(&self.alpha + &term))?)
    }

    /// Channel on `s_A₁ + s_A₂` modes with `α = α₁ ⊕ α₂`; the data of the tensor product.
    pub fn direct_sum(&self, o: &GaussianSpec) -> GaussianSpec {
        let block = |x: &QMatrix, y: &QMatrix| {
            let mut m = QMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
            m.set_block(0, 0, x);
            m.set_block(x.rows(), x.cols(), y);
            m
        };
        GaussianSpec {
            s_a: self.s_a + o.s_a,
            s_b: self.s_b + o.s_b,
            k: block(&self.k, &o.k),
            l: self.l.iter().chain(&o.l).cloned().collect(),
            alpha: block(&self.alpha, &o.alpha),
        }
    }

    /// Apply a symplectic `S` on `Z_B`: `K ↦ K S`, `α ↦ Sᵀ α S`, `l ↦ l S`.
    pub fn transform_output(&self, s: &QMatrix) -> GaussianSpec {
        let l = &QMatrix::from_rows(vec![self.l.clone()]).expect("row") * s;
        GaussianSpec {
            s_a: self.s_a,
            s_b: self.s_b,
            k: &self.k * s,
            l: l.row(0).to_vec(),
            alpha: &(&s.transpose() * &self.alpha) * s,
        }
    }

    pub fn to_file(&self) -> GaussianFile {
        GaussianFile { kind: "gaussian".into(), spec: self.clone() }
    }

    pub fn from_file(f: GaussianFile) -> Result<Self, Error> {
        if f.kind != "gaussian" {
            return Err(Error::Parse(format!("expected kind \"gaussian\", got {:?}", f.kind)));
        }
        f.spec.check_shapes()?;
        Ok(f.spec)
    }
}

pub fn classify_zero_error(spec: &GaussianSpec) -> Result<GaussianClassification, Error> {
    if !spec.validate()? {
        return Err(Error::Invalid("alpha ∓ (i/2)(Δ_B − KᵀΔ_A K) is not positive semidefinite".into()));
    }
    let z = kernel(&spec.alpha);
    let db = standard_symplectic(spec.s_b).delta;
    let mut pair = None;
    'outer: for (i, zi) in z.iter().enumerate() {
        let left = &zi.transpose() * &db;
        for (j, zj) in z.iter().enumerate().skip(i + 1) {
            if !(&left * zj).get(0, 0).is_zero() {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let level = |b: bool| if b { GaussianCapacity::PositiveInfinite } else { GaussianCapacity::Zero };
    Ok(GaussianClassification {
        cbar0: level(!z.is_empty()),
        qbar0: level(pair.is_some()),
        kernel_dim: z.len(),
        symplectic_pair: pair,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussianNonSuperactivation {
    pub first: GaussianClassification,
    pub second: GaussianClassification,
    pub tensor: GaussianClassification,
    /// `dim ker(α₁ ⊕ α₂) = dim ker α₁ + dim ker α₂`.
    pub kernel_dims_add: bool,
    pub cbar0_superactivates: bool,
    pub qbar0_superactivates: bool,
}

pub fn gaussian_nonsuperactivation(a: &GaussianSpec, b: &GaussianSpec) -> Result<GaussianNonSuperactivation, Error> {
    let first = classify_zero_error(a)?;
    let second = classify_zero_error(b)?;
    let tensor = classify_zero_error(&a.direct_sum(b))?;
    let zero = GaussianCapacity::Zero;
    Ok(GaussianNonSuperactivation {
        kernel_dims_add: tensor.kernel_dim == first.kernel_dim + second.kernel_dim,
        cbar0_superactivates: first.cbar0 == zero && second.cbar0 == zero && tensor.cbar0 != zero,
        qbar0_superactivates: first.qbar0 == zero && second.qbar0 == zero && tensor.qbar0 != zero,
        first,
        second,
        tensor,
    })
}

fn q(n: i64) -> QScalar {
    QScalar::from_int(n)
}

fn small_rational(rng: &mut impl Rng) -> QScalar {
    QScalar::frac(rng.random_range(-3..=3), rng.random_range(1..=3))
}

/// Rational symplectic matrix built from single-mode shears and two-mode couplings.
pub fn random_symplectic(rng: &mut impl Rng, s: usize) -> QMatrix {
    let mut m = QMatrix::identity(2 * s);
    for _ in 0..3 * s {
        let mut e = QMatrix::identity(2 * s);
        let t = small_rational(rng);
        let a = rng.random_range(0..s);
        match rng.random_range(0..3) {
            0 => e.set(2 * a, 2 * a + 1, t),
            1 => e.set(2 * a + 1, 2 * a, t),
            _ => {
                // q_a += t q_b together with p_b −= t p_a
                let b = rng.random_range(0..s);
                if a == b {
                    continue;
                }
                e.set(2 * a, 2 * b, t.clone());
                e.set(2 * b + 1, 2 * a + 1, -t);
            }
        }
        m = &m * &e;
    }
    m
}

/// Real symmetric PSD `2×2` of rank `r` with small rational entries.
fn psd_block(rng: &mut impl Rng, r: usize) -> QMatrix {
    let mut m = QMatrix::zeros(2, 2);
    for _ in 0..r {
        let v = QMatrix::column(&[small_rational(rng), small_rational(rng)]);
        m = &m + &(&v * &v.transpose());
    }
    m
}

/// Valid spec on `s` modes: each mode either passes through a symplectic block
/// with PSD noise of random rank, or is replaced by noise `α ≥ I/2`; the whole
/// output is then mixed by a random symplectic matrix.
pub fn random_gaussian_spec(rng: &mut impl Rng, s: usize) -> GaussianSpec {
    let mut k = QMatrix::zeros(2 * s, 2 * s);
    let mut alpha = QMatrix::zeros(2 * s, 2 * s);
    for m in 0..s {
        if rng.random_bool(0.7) {
            let r = rng.random_range(0..=2);
            k.set_block(2 * m, 2 * m, &random_symplectic(rng, 1));
            alpha.set_block(2 * m, 2 * m, &psd_block(rng, r));
        } else {
            let half = QMatrix::identity(2).scale(&QScalar::frac(1, 2));
            alpha.set_block(2 * m, 2 * m, &(&half + &psd_block(rng, 1)));
        }
    }
    let spec = GaussianSpec { s_a: s, s_b: s, k, l: vec![q(0); 2 * s], alpha };
    spec.transform_output(&random_symplectic(rng, s))
}
