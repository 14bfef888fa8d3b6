//! Float search for pairs `(φ, ψ)` solving the `Q̄₀` equations, followed by rounding.
//!
//! Minimizes `Σ_A |ψ†Aφ|² + (φ†Aφ − ψ†Aψ)²` over unit vectors with an
//! orthonormal Hermitian basis `{A}` of the graph. Nothing found here is trusted
//! until the exact check passes.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::float::{to_float, FMatrix, FVector, C64};
use crate::exact::{QMatrix, QScalar};
use crate::rank1::certificate::Subject;
use crate::rank1::heuristic::random_unit;
use crate::rank1::rationalize::rationalize_c64;
use crate::rank1::SearchConfig;

#[derive(Clone, Debug)]
pub struct PairCandidate {
    pub phi: FVector,
    pub psi: FVector,
    pub residual: f64,
    pub iterations: u64,
}

fn explicit_basis(subject: &Subject) -> Vec<QMatrix> {
    match subject {
        Subject::Space { space } => space.basis(),
        Subject::Tensor { left, right } => left.tensor(right).basis(),
    }
}

/// Orthonormal (Frobenius) Hermitian matrices spanning the graph.
fn hermitian_frame(basis: &[QMatrix]) -> Vec<FMatrix> {
    let i = QScalar::i();
    let mut frame: Vec<FMatrix> = Vec::new();
    for x in basis {
        let xa = x.adjoint();
        for h in [x + &xa, (x - &xa).scale(&i)] {
            let mut f = to_float(&h);
            for g in &frame {
                let c = g.dotc(&f);
                f -= g * c;
            }
            let norm = f.norm();
            if norm > 1e-9 {
                frame.push(f / C64::new(norm, 0.0));
            }
        }
    }
    frame
}

fn objective(frame: &[FMatrix], phi: &FVector, psi: &FVector) -> f64 {
    frame
        .iter()
        .map(|a| {
            let (ap, aq) = (a * phi, a * psi);
            let s = psi.dotc(&ap);
            let t = phi.dotc(&ap).re - psi.dotc(&aq).re;
            s.norm_sqr() + t * t
        })
        .sum()
}

/// Wirtinger gradients `∂/∂φ̄`, `∂/∂ψ̄` of the objective.
fn gradient(frame: &[FMatrix], phi: &FVector, psi: &FVector) -> (FVector, FVector) {
    let n = phi.len();
    let (mut gp, mut gq) = (FVector::zeros(n), FVector::zeros(n));
    for a in frame {
        let (ap, aq) = (a * phi, a * psi);
        let s = psi.dotc(&ap);
        let t = phi.dotc(&ap).re - psi.dotc(&aq).re;
        gp += &aq * s + &ap * C64::new(2.0 * t, 0.0);
        gq += &ap * s.conj() - &aq * C64::new(2.0 * t, 0.0);
    }
    (gp, gq)
}

fn normalized(v: FVector) -> FVector {
    let n = v.norm();
    v / C64::new(n, 0.0)
}

/// Projected gradient descent with restarts; the best candidate seen is returned.
pub fn qbar0_search(subject: &Subject, cfg: &SearchConfig) -> PairCandidate {
    let n = subject.ambient();
    let frame = hermitian_frame(&explicit_basis(subject));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = PairCandidate { phi: FVector::zeros(n), psi: FVector::zeros(n), residual: f64::INFINITY, iterations: 0 };
    let restarts = 8;
    let per = (cfg.iterations / restarts).max(1);
    let expired = |d: Option<Instant>| d.is_some_and(|d| Instant::now() >= d);
    for _ in 0..restarts {
        let (mut phi, mut psi) = (random_unit(&mut rng, n), random_unit(&mut rng, n));
        let mut f = objective(&frame, &phi, &psi);
        let mut step = 0.1;
        for _ in 0..per {
            best.iterations += 1;
            let (gp, gq) = gradient(&frame, &phi, &psi);
            let (p2, q2) = (normalized(&phi - &gp * C64::new(step, 0.0)), normalized(&psi - &gq * C64::new(step, 0.0)));
            let f2 = objective(&frame, &p2, &q2);
            if f2 < f {
                (phi, psi, f) = (p2, q2, f2);
                step *= 1.3;
            } else {
                step *= 0.5;
            }
            if f < cfg.tolerance || step < 1e-14 {
                break;
            }
        }
        if f < best.residual {
            best = PairCandidate { phi, psi, residual: f, iterations: best.iterations };
        }
        if best.residual < cfg.tolerance || expired(cfg.deadline) {
            break;
        }
    }
    best
}

/// Fix the common scale by the largest entry of `φ` and the phase of `ψ` by its
/// largest entry, then round entry-wise. Candidates above the residual gate are refused.
pub fn rationalize_qbar0(c: &PairCandidate, max_den: u64) -> Option<(Vec<QScalar>, Vec<QScalar>)> {
    if c.residual >= crate::rank1::rationalize::RESIDUAL_GATE {
        return None;
    }
    let argmax = |v: &FVector| v.iter().enumerate().fold((0, 0.0), |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc });
    let (k, top) = argmax(&c.phi);
    let (j, top_q) = argmax(&c.psi);
    if top == 0.0 || top_q == 0.0 {
        return None;
    }
    let phi = &c.phi / c.phi[k];
    let phase = c.psi[j].conj() / C64::new(top_q, 0.0);
    let psi = &c.psi * (phase / C64::new(top, 0.0));
    let round = |v: &FVector| v.iter().map(|z| rationalize_c64(*z, max_den)).collect::<Option<Vec<_>>>();
    Some((round(&phi)?, round(&psi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::Subspace;

    #[test]
    fn search_finds_scalar_graph_pair() {
        let s = Subject::Space { space: Subspace::scalars(2) };
        let c = qbar0_search(&s, &SearchConfig::default());
        assert!(c.residual < 1e-10);
    }

    #[test]
    fn full_space_stays_away_from_zero() {
        let s = Subject::Space { space: Subspace::full(2) };
        let c = qbar0_search(&s, &SearchConfig::default());
        assert!(c.residual > 1e-3);
        assert!(rationalize_qbar0(&c, 1000).is_none());
    }
}
