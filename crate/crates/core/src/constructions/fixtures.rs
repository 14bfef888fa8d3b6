//! The explicit subspaces, maps and vectors of the superactivation constructions,
//! stored exactly as displayed.

use crate::exact::{QMatrix, QScalar};
use crate::subspace::{schur, Subspace};

fn q(n: i64) -> QScalar {
    QScalar::from_int(n)
}

/// Span of a linear template evaluated on each unit parameter vector.
pub fn param_span(n: usize, params: usize, template: impl Fn(&[QScalar]) -> QMatrix) -> Subspace {
    let mats: Vec<QMatrix> = (0..params)
        .map(|k| {
            let mut p = vec![QScalar::zero(); params];
            p[k] = QScalar::one();
            template(&p)
        })
        .collect();
    Subspace::span(n, &mats).expect("template returns n x n matrices")
}

fn m4(rows: [[QScalar; 4]; 4]) -> QMatrix {
    QMatrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("4x4")
}

/// `Φ([[a,b],[c,d]]) = [[d,−c],[b,a]]`.
pub fn phi_theorem1(b: &QMatrix) -> QMatrix {
    let (a, bb, c, d) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    QMatrix::from_rows(vec![vec![d.clone(), -c], vec![bb.clone(), a.clone()]]).expect("2x2")
}

/// Eigenbasis `C₁..C₄` of `Φ` with eigenvalues `(i, −i, 1, −1)`.
pub fn theorem1_eigendata() -> (Vec<QMatrix>, Vec<QScalar>) {
    let c = vec![
        QMatrix::from_gauss(&[&[(0, 0), (0, 1)], &[(1, 0), (0, 0)]]),
        QMatrix::from_gauss(&[&[(0, 0), (0, -1)], &[(1, 0), (0, 0)]]),
        QMatrix::identity(2),
        QMatrix::from_ints(&[&[1, 0], &[0, -1]]),
    ];
    let l = vec![QScalar::i(), -QScalar::i(), q(1), q(-1)];
    (c, l)
}

/// `{[[A, Φ(B)], [B, A]]}` for a linear map `Φ` on `M₂`.
pub fn block_subspace(phi: impl Fn(&QMatrix) -> QMatrix) -> Subspace {
    param_span(4, 8, |p| {
        let a = QMatrix::from_vec(2, 2, p[..4].to_vec());
        let b = QMatrix::from_vec(2, 2, p[4..].to_vec());
        QMatrix::from_blocks(&a, &phi(&b), &b, &a)
    })
}

/// The symmetric transitive 8-dimensional subspace of `M₄` whose tensor square is not transitive.
pub fn l_theorem1() -> Subspace {
    param_span(4, 8, |p| {
        let [a, b, c, d, e, f, g, h] = std::array::from_fn(|k| p[k].clone());
        m4([
            [a.clone(), b.clone(), h.clone(), -&g],
            [c.clone(), d.clone(), f.clone(), e.clone()],
            [e, f, a, b],
            [g, h, c, d],
        ])
    })
}

/// `A = diag(1, 1, −1, −1)`, the `[[1,0],[0,−1]]` block pattern on `M₄`.
pub fn theorem1_sandwich() -> QMatrix {
    QMatrix::diag(&[q(1), q(1), q(-1), q(-1)])
}

/// The functional `T ↦ Tr(T₁₁ + T₂₂) = Tr(T)`, written as `Tr(F T)` with `F = I₄`.
pub fn theorem1_functional() -> QMatrix {
    QMatrix::identity(4)
}

/// `Ψ([[e,f],[g,h]]) = [[h, 2g], [f, e]]`, the coupling map of `𝔏₀`.
pub fn psi_l0(b: &QMatrix) -> QMatrix {
    let (e, f, g, h) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    QMatrix::from_rows(vec![vec![h.clone(), g * &q(2)], vec![f.clone(), e.clone()]]).expect("2x2")
}

/// The transitive subspace `𝔏₀ ⊂ M₄` with non-transitive tensor square.
pub fn l0() -> Subspace {
    param_span(4, 8, |p| {
        let [a, b, c, d, e, f, g, h] = std::array::from_fn(|k| p[k].clone());
        m4([
            [a.clone(), b.clone(), h.clone(), &g * &q(2)],
            [c.clone(), d.clone(), f.clone(), e.clone()],
            [e, f, a, b],
            [g, h, c, d],
        ])
    })
}

/// The displayed bilinear perp of `𝔏₀`.
pub fn l0_perp() -> Subspace {
    param_span(4, 8, |p| {
        let [a, b, c, d, e, f, g, h] = std::array::from_fn(|k| p[k].clone());
        m4([
            [a.clone(), b.clone(), -&h, -&g],
            [c.clone(), d.clone(), -&f, -&e],
            [e, f, -&a, -&b],
            [&g * &QScalar::frac(1, 2), h, -&c, -&d],
        ])
    })
}

/// `diag(1, 1, −1, −1)`; it maps `𝔏₀` onto `𝔏₀^⊥` by left multiplication.
pub fn block_sign() -> QMatrix {
    QMatrix::diag(&[q(1), q(1), q(-1), q(-1)])
}

/// The signs `s = (1, 1, −1, −1)`.
pub fn signs() -> [i64; 4] {
    [1, 1, -1, -1]
}

/// The Schur multiplier defining `A ↦ Â`.
pub fn t_shur() -> QMatrix {
    let mi = -QScalar::i();
    let pi = QScalar::i();
    m4([
        [q(1), q(1), mi.clone(), mi.clone()],
        [q(1), q(1), mi.clone(), mi],
        [pi.clone(), pi.clone(), q(1), q(1)],
        [pi.clone(), pi, q(1), q(1)],
    ])
}

pub fn hat(a: &QMatrix) -> QMatrix {
    schur(a, &t_shur())
}

/// The 9-dimensional subspace `𝔑` of traceless matrices without rank-one elements.
pub fn n_subspace() -> Subspace {
    param_span(4, 9, |p| {
        let [a, b, c, d, e, f, g, h, i] = std::array::from_fn(|k| p[k].clone());
        let z = QScalar::zero();
        m4([
            [&(&a + &b) + &c, &f + &g, i.clone(), z.clone()],
            [&d + &e, -&a, &(&f * &q(2)) + &g, i],
            [h.clone(), &(&d * &q(2)) + &e, -&b, &(&f * &q(3)) + &g],
            [z, h, &(&d * &q(3)) + &e, -&c],
        ])
    })
}

/// `𝔐 = 𝔑^⊥`, 7-dimensional, symmetric, unital and transitive.
pub fn m_subspace() -> Subspace {
    n_subspace().perp()
}

fn corner_subspace(source_top_left: bool) -> Subspace {
    let m = m_subspace();
    let b = l0_perp();
    let c = l0_perp().adjoint();
    let z = QMatrix::zeros(4, 4);
    let mut mats = Vec::new();
    for a in m.basis() {
        let ah = hat(&a);
        mats.push(if source_top_left {
            QMatrix::from_blocks(&a, &z, &z, &ah)
        } else {
            QMatrix::from_blocks(&ah, &z, &z, &a)
        });
    }
    for x in b.basis() {
        mats.push(QMatrix::from_blocks(&z, &x, &z, &z));
    }
    for x in c.basis() {
        mats.push(QMatrix::from_blocks(&z, &z, &x, &z));
    }
    Subspace::span(8, &mats).expect("8x8 blocks")
}

/// `𝔏₁ = {[[A, B], [C, Â]] : A ∈ 𝔐, B ∈ 𝔏₀^⊥, C* ∈ 𝔏₀^⊥}`.
pub fn l1() -> Subspace {
    corner_subspace(true)
}

/// `𝔏₂ = {[[Â, B], [C, A]] : A ∈ 𝔐, B ∈ 𝔏₀^⊥, C* ∈ 𝔏₀^⊥}`.
pub fn l2() -> Subspace {
    corner_subspace(false)
}

/// `{[[λI₂, A], [B, C]]}`: trivial commutant, positive one-shot quantum capacity.
pub fn remark1_subspace() -> Subspace {
    param_span(4, 13, |p| {
        let mut m = QMatrix::zeros(4, 4);
        m.set(0, 0, p[0].clone());
        m.set(1, 1, p[0].clone());
        let mut k = 1;
        for (r0, c0) in [(0, 2), (2, 0), (2, 2)] {
            for i in 0..2 {
                for j in 0..2 {
                    m.set(r0 + i, c0 + j, p[k].clone());
                    k += 1;
                }
            }
        }
        m
    })
}

/// Vectors of the extreme superactivation witness.
pub struct ExtremeVectors {
    /// `u = Σ x_i ⊗ y_i` in `ℂ⁴ ⊗ ℂ⁴`.
    pub u: Vec<QScalar>,
    /// `v = Σ s_i x_i ⊗ y_i`.
    pub v: Vec<QScalar>,
    /// `φ = ½ Σ |0,x_i⟩ ⊗ |0,y_i⟩` in `ℂ⁸ ⊗ ℂ⁸`, with `|0,x⟩ = 0 ⊕ x`.
    pub phi: Vec<QScalar>,
    /// `ψ = ½ Σ s_i |x_i,0⟩ ⊗ |y_i,0⟩`.
    pub psi: Vec<QScalar>,
}

/// `x_i = e_i`, `y_i = e_{5−i}` (1-based), `s = (1, 1, −1, −1)`.
pub fn extreme_vectors() -> ExtremeVectors {
    let s = signs();
    let half = QScalar::frac(1, 2);
    let mut u = vec![QScalar::zero(); 16];
    let mut v = vec![QScalar::zero(); 16];
    let mut phi = vec![QScalar::zero(); 64];
    let mut psi = vec![QScalar::zero(); 64];
    for k in 0..4 {
        let (x, y) = (k, 3 - k);
        u[x * 4 + y] = q(1);
        v[x * 4 + y] = q(s[k]);
        phi[(4 + x) * 8 + 4 + y] = half.clone();
        psi[x * 8 + y] = &half * &q(s[k]);
    }
    ExtremeVectors { u, v, phi, psi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_dimensions() {
        assert_eq!(l_theorem1().dim(), 8);
        assert_eq!(l0().dim(), 8);
        assert_eq!(l0_perp().dim(), 8);
        assert_eq!(n_subspace().dim(), 9);
        assert_eq!(m_subspace().dim(), 7);
        assert_eq!(l1().dim(), 23);
        assert_eq!(l2().dim(), 23);
        assert_eq!(remark1_subspace().dim(), 13);
    }

    #[test]
    fn theorem1_display_matches_block_form() {
        assert_eq!(block_subspace(phi_theorem1), l_theorem1());
        let (c, l) = theorem1_eigendata();
        for (ci, li) in c.iter().zip(&l) {
            assert_eq!(phi_theorem1(ci), ci.scale(li));
        }
        let s = l_theorem1();
        assert!(s.is_symmetric() && s.contains_identity());
        assert!(!s.is_algebra());
    }

    #[test]
    fn l0_perp_display_is_the_bilinear_perp() {
        assert_eq!(l0().perp(), l0_perp());
        assert_eq!(block_subspace(psi_l0), l0());
        assert_eq!(l0().sandwich(&block_sign(), &QMatrix::identity(4)), l0_perp());
        assert!(!l0().is_symmetric());
        assert!(!l0_perp().is_symmetric());
    }

    #[test]
    fn shur_multiplier_symmetries() {
        let t = t_shur();
        let s = signs();
        for i in 0..4 {
            for j in 0..4 {
                let rhs = t.get(3 - i, 3 - j) * &q(s[i] * s[j]);
                assert_eq!(t.get(i, j), &rhs);
            }
        }
        assert_eq!(hat(&QMatrix::identity(4)), QMatrix::identity(4));
    }

    #[test]
    fn corner_subspaces_are_symmetric_and_unital() {
        for l in [l1(), l2()] {
            assert!(l.is_symmetric());
            assert!(l.contains_identity());
        }
        let m = m_subspace();
        assert!(m.is_symmetric() && m.contains_identity());
        assert!(n_subspace().is_symmetric());
    }
}
