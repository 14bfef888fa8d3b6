//! One channel whose graph carries two graphs on the diagonal and free off-diagonal blocks.

use serde::Serialize;

use crate::constructions::synthesis::{synthesize, PseudoDiagonalSpec};
use crate::error::Error;
use crate::exact::{QMatrix, QScalar};
use crate::subspace::Subspace;

/// Dimensions of the Kraus-concatenated sum of two pseudo-diagonal channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub dim_in: usize,
    pub dim_env: usize,
    pub dim_out_bound: usize,
}

#[derive(Clone, Debug)]
pub struct DirectSumSymmetric {
    /// `[[G₁, *], [*, G₂]]`.
    pub graph: Subspace,
    /// A channel realising `graph` exactly.
    pub spec: PseudoDiagonalSpec,
    /// `(n₁ + n₂, m₁ + m₂, max(m₁n₁, m₂n₂))` from concatenating the two Kraus families.
    pub bookkeeping: Bookkeeping,
}

pub fn bookkeeping(a: &PseudoDiagonalSpec, b: &PseudoDiagonalSpec) -> Bookkeeping {
    Bookkeeping {
        dim_in: a.n + b.n,
        dim_env: a.m + b.m,
        dim_out_bound: a.output_bound().max(b.output_bound()),
    }
}

pub fn direct_sum_symmetric(a: &PseudoDiagonalSpec, b: &PseudoDiagonalSpec) -> Result<DirectSumSymmetric, Error> {
    let graph = Subspace::direct_sum_graph(&a.graph(), &b.graph());
    let spec = synthesize(&graph)?;
    Ok(DirectSumSymmetric { graph, spec, bookkeeping: bookkeeping(a, b) })
}

/// Permutation taking `ℂ^{n₁} ⊕ ℂ^{n₂}` to `ℂ^{n₂} ⊕ ℂ^{n₁}`.
pub fn block_swap(n1: usize, n2: usize) -> QMatrix {
    let n = n1 + n2;
    let mut p = QMatrix::zeros(n, n);
    for i in 0..n1 {
        p.set(n2 + i, i, QScalar::one());
    }
    for j in 0..n2 {
        p.set(j, n1 + j, QScalar::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::{l_theorem1, remark1_subspace};

    #[test]
    fn scalars_give_all_of_m2() {
        let one = synthesize(&Subspace::scalars(1)).unwrap();
        let s = direct_sum_symmetric(&one, &one).unwrap();
        assert_eq!(s.graph, Subspace::full(2));
        assert_eq!(s.bookkeeping, Bookkeeping { dim_in: 2, dim_env: 2, dim_out_bound: 1 });
        assert_eq!(s.spec.graph(), s.graph);
    }

    #[test]
    fn swap_conjugates_one_order_into_the_other() {
        let a = synthesize(&l_theorem1()).unwrap();
        let b = synthesize(&remark1_subspace()).unwrap();
        let ab = Subspace::direct_sum_graph(&a.graph(), &b.graph());
        let ba = Subspace::direct_sum_graph(&b.graph(), &a.graph());
        let p = block_swap(a.n, b.n);
        assert_eq!(ab.sandwich(&p, &p.adjoint()), ba);
    }
}
