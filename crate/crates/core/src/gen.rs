//! Random expression generation for property suites.

use rand::Rng;

use crate::expr::Expr;
use crate::sampling::sample_rational;

/// Shape parameters for random expressions.
#[derive(Debug, Clone)]
pub struct ExprGen {
    pub arity: usize,
    /// Maximum tree depth (a leaf has depth 1).
    pub max_depth: usize,
    /// Bound for literal numerators and denominators.
    pub bound: u32,
    pub allow_mul: bool,
    pub allow_const: bool,
}

impl ExprGen {
    pub fn new(arity: usize, max_depth: usize) -> Self {
        ExprGen {
            arity: arity.max(1),
            max_depth: max_depth.max(1),
            bound: 8,
            allow_mul: true,
            allow_const: true,
        }
    }

    /// Products and nonzero constants disabled: positively homogeneous output.
    pub fn lattice_linear(arity: usize, max_depth: usize) -> Self {
        ExprGen {
            allow_mul: false,
            allow_const: false,
            ..ExprGen::new(arity, max_depth)
        }
    }

    pub fn bound(mut self, bound: u32) -> Self {
        self.bound = bound;
        self
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Expr {
        self.node(rng, self.max_depth)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Expr {
        if self.allow_const && rng.random_bool(0.3) {
            Expr::Const(sample_rational(rng, self.bound))
        } else {
            Expr::var(rng.random_range(1..=self.arity))
        }
    }

    fn node<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Expr {
        // leaves get likelier as the remaining depth shrinks
        let p_leaf = if depth <= 1 {
            1.0
        } else {
            0.15 + 0.6 * (1.0 - depth as f64 / self.max_depth as f64)
        };
        if rng.random_bool(p_leaf.min(1.0)) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        let kinds = if self.allow_mul { 6 } else { 5 };
        match rng.random_range(0..kinds) {
            0 => Expr::neg(self.node(rng, d)),
            1 => Expr::add(self.node(rng, d), self.node(rng, d)),
            2 => Expr::scale(sample_rational(rng, self.bound), self.node(rng, d)),
            3 => Expr::join(self.node(rng, d), self.node(rng, d)),
            4 => Expr::meet(self.node(rng, d), self.node(rng, d)),
            _ => Expr::mul(self.node(rng, d), self.node(rng, d)),
        }
    }
}
