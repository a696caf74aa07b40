//! Deterministic helpers shared by unit tests.

use crate::field::{Field, TowerRef};
use crate::linalg::{Matrix, MatrixFqm};

/// splitmix64: tiny, seedable, stable across platforms.
pub(crate) struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

pub(crate) fn random_matrix(t: &TowerRef, rng: &mut Rng, rows: usize, cols: usize) -> MatrixFqm {
    let k = t.fqm();
    Matrix::from_fn(rows, cols, |_, _| k.from_index(rng.below(t.qm)))
}

/// Rejection-samples a matrix with full row rank.
pub(crate) fn random_full_rank(t: &TowerRef, rng: &mut Rng, rows: usize, cols: usize) -> MatrixFqm {
    loop {
        let m = random_matrix(t, rng, rows, cols);
        if crate::linalg::rank(&t.fqm(), &m) == rows {
            return m;
        }
    }
}
