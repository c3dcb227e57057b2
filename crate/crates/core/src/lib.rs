//! Exact symbolic kernel for polynomial-growth function calculus on
//! lattice-ordered algebras.
//!
//! Expressions built from constants, coordinate projections, `+`, scalar
//! multiples, products, `max` and `min` denote continuous functions of
//! polynomial growth on `R^n`. This crate evaluates them exactly, bounds
//! their growth, extracts their homogeneous part at the origin, and pushes
//! them through the function calculus of concrete lattice-ordered algebras.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod gen;
pub mod growth;
pub mod homog;
pub mod ideals;
pub mod interval;
pub mod models;
pub mod parser;
pub mod rational;
pub mod sampling;

pub use error::{Error, ParseError, Result};
pub use expr::{const_fold, eval_point, format, Expr, Point};
pub use parser::{parse, parse_auto};
pub use rational::Q;
pub use sampling::{semantic_eq, SamplingPlan, SemanticEq};
