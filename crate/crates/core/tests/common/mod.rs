//! Seeded property checks shared by the property and acceptance targets.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qzero_core::channel::random::{random_channel, random_vector};
use qzero_core::channel::KrausChannel;
use qzero_core::exact::{QMatrix, QScalar};
use qzero_core::rank1::n2::rank_one_decision_n2;
use qzero_core::rank1::rationalize::{rationalize_and_verify, Candidate};
use qzero_core::rank1::Verdict;
use qzero_core::exact::float::{FVector, C64};
use qzero_core::subspace::Subspace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut impl Rng, n: usize, density: f64) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(density) {
                m.set(i, j, QScalar::gauss(rng.random_range(-2..=2), rng.random_range(-2..=2)));
            }
        }
    }
    m
}

/// Span of a few random (often sparse, often dependent) matrices in `M_n`.
pub fn random_subspace(rng: &mut impl Rng, n: usize) -> Subspace {
    let k = rng.random_range(0..=n * n);
    let density = [0.2, 0.5, 1.0][rng.random_range(0..3)];
    let mats: Vec<QMatrix> = (0..k).map(|_| random_matrix(rng, n, density)).collect();
    Subspace::span(n, &mats).expect("square")
}

/// `perp(perp W) = W`, `dim W + dim perp W = n²`, and perp reverses inclusion.
pub fn perp_involution(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=4);
    let w = random_subspace(&mut r, n);
    let p = w.perp();
    if w.dim() + p.dim() != n * n {
        return Err(format!("dims {} + {} ≠ {}", w.dim(), p.dim(), n * n));
    }
    if p.perp() != w {
        return Err("perp is not an involution".into());
    }
    let v = w.sum(&random_subspace(&mut r, n));
    if !v.perp().is_subspace_of(&p) {
        return Err("perp does not reverse inclusion".into());
    }
    if w.adjoint().perp() != p.adjoint() {
        return Err("perp does not commute with the adjoint".into());
    }
    Ok(())
}

pub fn random_small_channel(r: &mut impl Rng) -> KrausChannel {
    let n: usize = r.random_range(1..=4);
    let m: usize = r.random_range(1..=3);
    let count = r.random_range(n.div_ceil(m)..=n.div_ceil(m) + 1);
    random_channel(r, n, m, count)
}

/// The graph of an exact channel is symmetric and contains the identity.
pub fn graph_conditions(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let ch = random_small_channel(&mut r);
    let g = ch.graph();
    if !g.is_symmetric() || !g.contains_identity() {
        return Err(format!("graph of a {}→{} channel fails the graph conditions", ch.dim_in(), ch.dim_out()));
    }
    Ok(())
}

/// Two channels with orthogonal output blocks, as one channel.
fn orthogonal_sum(a: &KrausChannel, b: &KrausChannel) -> KrausChannel {
    let (n, m) = (a.dim_in() + b.dim_in(), a.dim_out() + b.dim_out());
    let mut kraus = Vec::new();
    for v in a.kraus() {
        let mut k = QMatrix::zeros(m, n);
        k.set_block(0, 0, v);
        kraus.push(k);
    }
    for v in b.kraus() {
        let mut k = QMatrix::zeros(m, n);
        k.set_block(a.dim_out(), a.dim_in(), v);
        kraus.push(k);
    }
    KrausChannel::new(kraus).expect("block-diagonal isometry")
}

fn pure(v: &[QScalar]) -> QMatrix {
    let c = QMatrix::column(v);
    &c * &c.adjoint()
}

/// `Φ̂(|φ⟩⟨ψ|) = 0` agrees with `Φ(|φ⟩⟨φ|) Φ(|ψ⟩⟨ψ|) = 0`.
pub fn complementary_kernel_matches_supports(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let (a, b) = (random_small_channel(&mut r), random_small_channel(&mut r));
    let ch = orthogonal_sum(&a, &b);
    let n = ch.dim_in();
    let (phi, psi) = match r.random_range(0..3) {
        // inputs from different blocks: orthogonal outputs
        0 => {
            let mut p = vec![QScalar::zero(); n];
            let mut q = vec![QScalar::zero(); n];
            p[..a.dim_in()].clone_from_slice(&random_vector(&mut r, a.dim_in(), 2));
            q[a.dim_in()..].clone_from_slice(&random_vector(&mut r, b.dim_in(), 2));
            (p, q)
        }
        1 => {
            let p = random_vector(&mut r, n, 2);
            (p.clone(), p)
        }
        _ => (random_vector(&mut r, n, 2), random_vector(&mut r, n, 2)),
    };
    let hat = ch.complementary(&(&QMatrix::column(&phi) * &QMatrix::column(&psi).adjoint())).map_err(|e| e.to_string())?;
    let kernel_test = hat.is_zero();
    let out_phi = ch.apply(&pure(&phi)).map_err(|e| e.to_string())?;
    let out_psi = ch.apply(&pure(&psi)).map_err(|e| e.to_string())?;
    let support_test = (&out_phi * &out_psi).is_zero();
    let graph_test = ch.outputs_orthogonal(&phi, &psi).map_err(|e| e.to_string())?;
    if kernel_test != support_test || graph_test != support_test {
        return Err(format!("kernel {kernel_test}, supports {support_test}, graph {graph_test}"));
    }
    Ok(())
}

fn det2(m: &QMatrix) -> QScalar {
    &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0))
}

/// Over ℂ a subspace of `M₂` of dimension ≥ 2 always meets the determinant cone;
/// a line meets it exactly when its generator is singular.
pub fn n2_matches_determinant_oracle(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let w = random_subspace(&mut r, 2);
    let basis = w.basis();
    let expect = match basis.len() {
        0 => false,
        1 => det2(&basis[0]).is_zero(),
        _ => true,
    };
    let c = rank_one_decision_n2(&w).map_err(|e| e.to_string())?;
    c.verify().map_err(|e| e.to_string())?;
    let found = match c.verdict {
        Verdict::RankOneFound => true,
        Verdict::NoRankOne => false,
        v => return Err(format!("n = 2 decision returned {v:?}")),
    };
    if found != expect {
        return Err(format!("dim {}: decision {found}, oracle {expect}", w.dim()));
    }
    Ok(())
}

/// A candidate whose recorded residual is at least the gate never becomes RANK_ONE_FOUND,
/// even when its vectors happen to be an exact witness.
pub fn rationalize_gate_holds(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.random_range(1..=3);
    let w = if r.random_bool(0.5) { Subspace::full(n) } else { random_subspace(&mut r, n) };
    let exact_like = |r: &mut ChaCha8Rng| FVector::from_fn(n, |_, _| C64::new(r.random_range(-2..=2) as f64, 0.0));
    let cand = Candidate {
        x: exact_like(&mut r),
        y: exact_like(&mut r),
        residual: 1e-3 * (1.0 + r.random_range(0.0..1e6)),
        seed,
        iterations: 1,
    };
    let c = rationalize_and_verify(&w, &cand, 1000).map_err(|e| e.to_string())?;
    if c.verdict == Verdict::RankOneFound {
        return Err(format!("residual {} candidate was accepted", cand.residual));
    }
    Ok(())
}
