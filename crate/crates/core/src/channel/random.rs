//! Exactly valid random channels.
//!
//! A Cayley transform `U = (I + iH)⁻¹(I − iH)` of a Hermitian `H` with small
//! Gaussian-integer entries is unitary over ℚ(i). The first `n` columns of `U`
//! form an isometry whose row blocks are a Kraus family, so completeness holds
//! exactly with no square roots anywhere.

use rand::Rng;

use crate::channel::KrausChannel;
use crate::exact::{inverse, QMatrix, QScalar};

fn small(rng: &mut impl Rng, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize, bound: i64) -> QMatrix {
    let mut h = QMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, QScalar::from_int(small(rng, bound)));
        for j in i + 1..n {
            let z = QScalar::gauss(small(rng, bound), small(rng, bound));
            h.set(j, i, z.conj());
            h.set(i, j, z);
        }
    }
    h
}

/// Exactly unitary matrix from the Cayley transform of a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize, bound: i64) -> QMatrix {
    let ih = random_hermitian(rng, n, bound).scale(&QScalar::i());
    let id = QMatrix::identity(n);
    let plus = inverse(&(&id + &ih)).expect("I + iH is invertible for Hermitian H");
    &plus * &(&id - &ih)
}

/// Channel `M_n → M_m` with `count` Kraus operators, requiring `m·count ≥ n`.
pub fn random_channel(rng: &mut impl Rng, n: usize, m: usize, count: usize) -> KrausChannel {
    let big = m * count;
    assert!(big >= n, "isometry needs m·count ≥ n");
    let u = random_unitary(rng, big, 2);
    let kraus = (0..count).map(|k| u.block(k * m, 0, m, n)).collect();
    KrausChannel::new(kraus).expect("isometry blocks are complete")
}

/// Channel on `M_n` whose graph is `U(M_{k} ⊕ M_{n−k})U†`-shaped block data,
/// hence a *-algebra whenever both blocks come out full.
pub fn random_block_channel(rng: &mut impl Rng, n: usize) -> KrausChannel {
    let k = rng.random_range(1..=n);
    let first = random_channel(rng, k, k, k);
    let parts = if k < n { vec![first, random_channel(rng, n - k, n - k, n - k)] } else { vec![first] };
    let out: usize = parts.iter().map(KrausChannel::dim_out).sum();
    let u = random_unitary(rng, n, 1);
    let mut kraus = Vec::new();
    let (mut r0, mut c0) = (0, 0);
    for p in &parts {
        for v in p.kraus() {
            let mut big = QMatrix::zeros(out, n);
            big.set_block(r0, c0, v);
            kraus.push(&big * &u);
        }
        r0 += p.dim_out();
        c0 += p.dim_in();
    }
    KrausChannel::new(kraus).expect("block isometry composed with a unitary")
}

/// Nonzero vector with small Gaussian-integer entries.
pub fn random_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<QScalar> {
    loop {
        let v: Vec<QScalar> = (0..n).map(|_| QScalar::gauss(small(rng, bound), small(rng, bound))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_unitary_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(&mut rng, 3, 2);
        assert_eq!(&u.adjoint() * &u, QMatrix::identity(3));
    }

    #[test]
    fn random_channels_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let ch = random_channel(&mut rng, 3, 2, 2);
            assert!(KrausChannel::validate(ch.kraus()));
            let g = ch.graph();
            assert!(g.contains_identity() && g.is_symmetric());
        }
    }

    #[test]
    fn block_channels_have_algebra_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            assert!(random_block_channel(&mut rng, 3).graph().is_algebra());
        }
    }
}
