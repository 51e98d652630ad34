//! Seeded free-parameter matrices.
//!
//! Generator: ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Entries are drawn row-major, each as
//! `(next_u64() mod 19) − 9`, giving integers in `[−9, 9]`. Any
//! implementation of ChaCha8 with the same seed expansion reproduces the
//! same matrices.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_field::{from_int, Mat};

/// Lowest and highest entry produced by [`random_matrix`].
pub const RANDOM_ENTRY_RANGE: (i64, i64) = (-9, 9);

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = RANDOM_ENTRY_RANGE;
    let span = (hi - lo + 1) as u64;
    Mat::from_fn(rows, cols, |_, _| from_int((rng.next_u64() % span) as i64 + lo))
}

/// Square `n×n` variant of [`random_matrix`].
pub fn random_z(n: usize, seed: u64) -> Mat {
    random_matrix(n, n, seed)
}
