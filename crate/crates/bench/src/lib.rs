//! Fixed inputs shared by the benchmarks.

use latcalc_core::gen::ExprGen;
use latcalc_core::sampling::{rng_for, sample_vector};
use latcalc_core::{Expr, Q};

/// `count` random expressions of the given arity and depth.
pub fn expressions(arity: usize, depth: usize, count: usize, seed: u64) -> Vec<Expr> {
    let gen = ExprGen::new(arity, depth);
    (0..count)
        .map(|i| gen.generate(&mut rng_for(seed, i as u64)))
        .collect()
}

/// `n` vectors of length `k`.
pub fn tuple(n: usize, k: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = rng_for(seed, u64::MAX);
    (0..n).map(|_| sample_vector(&mut rng, k, 8)).collect()
}
