//! Fixtures shared by the benchmarks.

use bdtriple_core::bdcore::{conjugate_triple, BdTriple};
use bdtriple_core::exactlinalg::int;
use bdtriple_core::{Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An invertible `n × n` matrix with entries in `[-3, 3]`.
pub fn random_invertible(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}

/// `t` conjugated by a seeded random invertible matrix.
pub fn scrambled(t: &BdTriple, seed: u64) -> BdTriple {
    conjugate_triple(t, &random_invertible(t.dim(), seed)).expect("invertible")
}
