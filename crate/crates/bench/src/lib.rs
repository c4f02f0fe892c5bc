//! Fixed inputs shared by the benchmarks.

use canform::oracle::{random_matrix, random_pair};
use canform::{ContraPair, Field, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn square(field: Field, n: usize, seed: u64) -> Matrix {
    random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), field, n, n)
}

pub fn pair(field: Field, m: usize, n: usize, seed: u64) -> ContraPair {
    random_pair(&mut ChaCha8Rng::seed_from_u64(seed), field, m, n)
}
