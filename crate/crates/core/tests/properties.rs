mod common;

use proptest::prelude::*;
use proptest::test_runner::Config;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qzero_core::channel::random::random_block_channel;
use qzero_core::zeroerr::{cbar0_positive_space, commutant_analysis, commutant_cbar0_witness, ZeroErrorContext};

fn cases(n: u32) -> Config {
    Config { cases: n, failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(cases(1000))]
    #[test]
    fn perp_involution_and_dimensions(seed in any::<u64>()) {
        common::perp_involution(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(cases(200))]
    #[test]
    fn channel_graphs_are_symmetric_and_unital(seed in any::<u64>()) {
        common::graph_conditions(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn complementary_kernel_is_support_orthogonality(seed in any::<u64>()) {
        common::complementary_kernel_matches_supports(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(cases(500))]
    #[test]
    fn n2_decision_matches_determinant_oracle(seed in any::<u64>()) {
        common::n2_matches_determinant_oracle(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rationalize_gate(seed in any::<u64>()) {
        common::rationalize_gate_holds(seed).map_err(TestCaseError::fail)?;
    }

    /// A nontrivial commutant yields an exact invariant-subspace witness with `C̄₀ > 0`.
    #[test]
    fn nontrivial_commutant_gives_classical_witness(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 3) as usize;
        let g = random_block_channel(&mut rng, n).graph();
        let ca = commutant_analysis(&g);
        if ca.dim > 1 {
            let w = commutant_cbar0_witness(&g);
            prop_assert!(w.is_some(), "no witness for commutant of dim {}", ca.dim);
            let ctx = ZeroErrorContext::default();
            prop_assert!(cbar0_positive_space(&g, &ctx).unwrap().is_positive());
        }
    }
}
