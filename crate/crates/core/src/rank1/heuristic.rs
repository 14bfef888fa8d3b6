//! Floating-point search for rank-one elements: alternating minimization of
//! `Σ_k |yᵀ C_k x|²` over unit `x`, `y`, where `{C_k}` spans the perp of the target.
//! Results are hints only.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::float::{least_singular_direction, to_float, FMatrix, FVector, C64};
use crate::rank1::rationalize::Candidate;
use crate::subspace::Subspace;

/// Restart after this many alternating steps without reaching the tolerance.
const STEPS_PER_RESTART: usize = 150;

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> FVector {
    let v = FVector::from_fn(n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let norm = v.norm();
    if norm == 0.0 {
        let mut e = FVector::zeros(n);
        e[0] = C64::new(1.0, 0.0);
        e
    } else {
        v / C64::new(norm, 0.0)
    }
}

/// Rows `(C_k x)ᵀ`: the constraints on `y` for fixed `x`.
fn constraints_on_y(cs: &[FMatrix], x: &FVector) -> FMatrix {
    let n = x.len();
    let mut m = FMatrix::zeros(cs.len(), n);
    for (k, c) in cs.iter().enumerate() {
        let cx = c * x;
        for j in 0..n {
            m[(k, j)] = cx[j];
        }
    }
    m
}

/// Rows `yᵀ C_k`: the constraints on `x` for fixed `y`.
fn constraints_on_x(cs: &[FMatrix], y: &FVector) -> FMatrix {
    let n = y.len();
    let mut m = FMatrix::zeros(cs.len(), n);
    for (k, c) in cs.iter().enumerate() {
        let yc = y.transpose() * c;
        for j in 0..n {
            m[(k, j)] = yc[j];
        }
    }
    m
}

/// Minimize over perp basis matrices `cs`; deterministic given the seed.
pub fn search_with_constraints(
    cs: &[FMatrix],
    n: usize,
    seed: u64,
    iterations: usize,
    tolerance: f64,
    deadline: Option<Instant>,
) -> Candidate {
    let mut e1 = FVector::zeros(n);
    if n > 0 {
        e1[0] = C64::new(1.0, 0.0);
    }
    if cs.is_empty() {
        return Candidate { x: e1.clone(), y: e1, residual: 0.0, seed, iterations: 0 };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Candidate { x: e1.clone(), y: e1, residual: f64::INFINITY, seed, iterations: 0 };
    let mut used = 0;
    while used < iterations {
        let mut x = random_unit(&mut rng, n);
        let mut y = FVector::zeros(n);
        let mut res = f64::INFINITY;
        for _ in 0..STEPS_PER_RESTART.min(iterations - used) {
            used += 1;
            let (ny, _) = least_singular_direction(&constraints_on_y(cs, &x));
            y = ny;
            let (nx, s) = least_singular_direction(&constraints_on_x(cs, &y));
            x = nx;
            res = s;
            if res < tolerance {
                break;
            }
        }
        if res < best.residual {
            best = Candidate { x: x.clone(), y: y.clone(), residual: res, seed, iterations: used as u64 };
        }
        if best.residual < tolerance || deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
    }
    best.iterations = used as u64;
    best
}

/// Search for `x yᵀ ∈ w`.
pub fn heuristic_search(w: &Subspace, seed: u64, iterations: usize, tolerance: f64) -> Candidate {
    let cs: Vec<FMatrix> = w.perp().basis().iter().map(to_float).collect();
    search_with_constraints(&cs, w.ambient(), seed, iterations, tolerance, None)
}

/// Residual of a float pair against the perp basis of `w`.
pub fn residual(w: &Subspace, x: &FVector, y: &FVector) -> f64 {
    let cs: Vec<FMatrix> = w.perp().basis().iter().map(to_float).collect();
    (constraints_on_y(&cs, x) * y).norm() / (x.norm() * y.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QMatrix;

    #[test]
    fn full_space_has_zero_residual() {
        let c = heuristic_search(&Subspace::full(2), 3, 10, 1e-12);
        assert_eq!(c.residual, 0.0);
    }

    #[test]
    fn finds_rank_one_in_diagonal_perp() {
        // perp of the diagonal matrices is the off-diagonal part, which holds e1 e2ᵀ
        let diag = Subspace::span(2, &[QMatrix::matrix_unit(2, 0, 0), QMatrix::matrix_unit(2, 1, 1)]).unwrap();
        let c = heuristic_search(&diag.perp(), 7, 300, 1e-12);
        assert!(c.residual < 1e-10, "{}", c.residual);
    }

    #[test]
    fn deterministic_given_seed() {
        let w = Subspace::scalars(3);
        let a = heuristic_search(&w, 11, 40, 1e-14);
        let b = heuristic_search(&w, 11, 40, 1e-14);
        assert_eq!(a.residual, b.residual);
    }
}
