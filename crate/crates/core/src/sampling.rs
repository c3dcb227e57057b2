//! Seeded randomness, sampling plans and the sampled equality oracle.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Expr, Point};
use crate::rational::{self, Q};

pub type TrialRng = ChaCha8Rng;

/// Derives an independent seed for trial `index` of a run seeded with `seed`
/// (splitmix64 finalizer over the pair).
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, index: u64) -> TrialRng {
    TrialRng::seed_from_u64(trial_seed(seed, index))
}

/// Rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn sample_rational<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Q {
    let b = bound.max(1) as i64;
    let num = rng.random_range(-b..=b);
    let den = rng.random_range(1..=b);
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn sample_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, bound: u32) -> Vec<Q> {
    (0..len).map(|_| sample_rational(rng, bound)).collect()
}

/// Rational uniformly drawn from the grid `lo + (hi-lo)·j/steps`.
pub fn sample_in<R: Rng + ?Sized>(rng: &mut R, lo: &Q, hi: &Q, steps: u32) -> Q {
    let j = rng.random_range(0..=steps as i64);
    lo + (hi - lo) * rational::ratio(j, steps as i64)
}

/// Deterministic grid plus seeded random points.
#[derive(Debug, Clone)]
pub struct SamplingPlan {
    /// Per-axis grid values; the grid is their cartesian power.
    pub grid: Vec<Q>,
    /// Cap on the number of grid points; larger grids fall back to `{-1, 0, 1}`
    /// and are then truncated.
    pub max_grid_points: usize,
    pub random_points: usize,
    pub bound: u32,
    /// When set, random coordinates are drawn from this interval instead.
    pub range: Option<(Q, Q)>,
    pub seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        let grid = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
            .iter()
            .map(|&(n, d)| rational::ratio(n, d))
            .collect();
        SamplingPlan {
            grid,
            max_grid_points: 4096,
            random_points: 64,
            bound: 8,
            range: None,
            seed: 0,
        }
    }
}

impl SamplingPlan {
    /// Plan restricted to `[0, 1]`.
    pub fn unit_interval(seed: u64) -> Self {
        SamplingPlan {
            grid: (0..=8).map(|j| rational::ratio(j, 8)).collect(),
            range: Some((rational::zero(), rational::one())),
            seed,
            ..SamplingPlan::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn points(&self, n: usize) -> Vec<Point> {
        let mut values = self.grid.clone();
        let fits = |len: usize| {
            (len as f64).powi(n as i32) <= self.max_grid_points as f64
        };
        if !fits(values.len()) && self.range.is_none() {
            values = vec![rational::int(-1), rational::zero(), rational::one()];
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(Vec::new());
        } else if !values.is_empty() {
            let mut idx = vec![0usize; n];
            'grid: loop {
                if out.len() >= self.max_grid_points {
                    break;
                }
                out.push(idx.iter().map(|&i| values[i].clone()).collect());
                for slot in idx.iter_mut().rev() {
                    *slot += 1;
                    if *slot < values.len() {
                        continue 'grid;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        let mut rng = rng_for(self.seed, 0x5eed);
        for _ in 0..self.random_points {
            let p = match &self.range {
                Some((lo, hi)) => (0..n).map(|_| sample_in(&mut rng, lo, hi, 64)).collect(),
                None => sample_vector(&mut rng, n, self.bound),
            };
            out.push(p);
        }
        out
    }
}

/// Outcome of the sampled equality test. `Unequal` is always correct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemanticEq {
    EqualOnSamples { points: usize },
    Unequal { witness: Point, left: Q, right: Q },
}

impl SemanticEq {
    pub fn is_equal(&self) -> bool {
        matches!(self, SemanticEq::EqualOnSamples { .. })
    }
}

/// Compares two expressions over `arity` variables on the plan's points.
pub fn semantic_eq(a: &Expr, b: &Expr, arity: usize, plan: &SamplingPlan) -> SemanticEq {
    let points = plan.points(arity);
    for t in &points {
        let (left, right) = (a.eval(t), b.eval(t));
        if left != right {
            return SemanticEq::Unequal {
                witness: t.clone(),
                left,
                right,
            };
        }
    }
    SemanticEq::EqualOnSamples {
        points: points.len(),
    }
}
