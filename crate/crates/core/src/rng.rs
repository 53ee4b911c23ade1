//! Counter-based random streams.
//!
//! Sample `k` of a run seeded with `seed` always comes from ChaCha8 stream
//! `k` under key `seed`, so results do not depend on evaluation order.

use alloc::vec::Vec;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;

/// Independent generator for sample `index` of the run keyed by `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `n` draws uniform in `[lo, hi)`.
pub fn uniform_vec<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|_| lo + (hi - lo) * rng.random::<f64>())
        .collect()
}

/// A point of `[0, 1]^n`.
pub fn random_d(seed: u64, index: u64, n: usize) -> Vec<f64> {
    uniform_vec(&mut stream(seed, index), n, 0.0, 1.0)
}

/// Random Nekrasov matrix with positive diagonal.
///
/// Off-diagonal entries are uniform in `[-1, 1]`. Rows are filled in index
/// order and the diagonal is set to `h_i + u` with `u` uniform in
/// `(0.1, 1)`, which is well defined because `h_i` only reads diagonal
/// entries of earlier rows.
pub fn random_nekrasov(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Matrix::zeros(n);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if j != i {
                a[(i, j)] = -1.0 + 2.0 * rng.random::<f64>();
            }
        }
        let lower: f64 = (0..i).map(|j| a[(i, j)].abs() / a.diag(j) * h[j]).sum();
        let upper: f64 = (i + 1..n).map(|j| a[(i, j)].abs()).sum();
        let hi = lower + upper;
        let u: f64 = rng.sample(Open01);
        a[(i, i)] = hi + 0.1 + 0.9 * u;
        h.push(hi);
    }
    a
}
