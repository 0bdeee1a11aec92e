//! Shorthand constructors shared by the unit tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::format::parse_matrix;
use crate::matrix::TropMatrix;
use crate::oracle::{random_instance, random_matrix, random_regular_vector};
use crate::refine::ProblemInstance;
use crate::Scalar;

pub type Q = Scalar;

/// Rows separated by `;`.
pub fn m(text: &str) -> TropMatrix<Q> {
    parse_matrix(&text.replace(';', "\n")).expect("valid matrix literal")
}

/// Column vector from whitespace-separated entries.
pub fn v(text: &str) -> TropMatrix<Q> {
    TropMatrix::column_vector(m(text).entries().to_vec())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_matrix(seed: u64, rows: usize, cols: usize, zero_density: f64) -> TropMatrix<Q> {
    random_matrix(&mut rng(seed), rows, cols, zero_density, (-3, 3))
}

pub fn rand_instance(seed: u64, rows: usize, cols: usize, zero_density: f64) -> ProblemInstance<Q> {
    random_instance(&mut rng(seed), rows, cols, zero_density, (-3, 3))
}

pub fn rand_regular_vector(seed: u64, len: usize) -> TropMatrix<Q> {
    random_regular_vector(&mut rng(seed), len, (-10, 10))
}
