//! Lattice-polynomial expressions: the sublattice-algebra of functions on
//! `R^n` generated by the constant one function and the coordinate
//! projections.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// A point of `R^n` with exact rational coordinates.
pub type Point = Vec<Q>;

/// Expression tree. `Const(q)` stands for `q` times the constant one
/// function and `Var(i)` for the `i`-th coordinate projection (1-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Q),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Scale(Q, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn constant(q: Q) -> Expr {
        Expr::Const(q)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(rational::int(n))
    }

    pub fn zero() -> Expr {
        Expr::Const(Q::zero())
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    /// Coordinate projection `x{i}`; `i` is 1-based.
    pub fn var(i: usize) -> Expr {
        assert!(i >= 1, "variables are 1-based");
        Expr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    /// `a - b`, which the tree stores as `a + (-b)`.
    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::add(a, Expr::neg(b))
    }

    pub fn scale(q: Q, e: Expr) -> Expr {
        Expr::Scale(q, Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn join(a: Expr, b: Expr) -> Expr {
        Expr::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Expr, b: Expr) -> Expr {
        Expr::Meet(Box::new(a), Box::new(b))
    }

    /// `|e| = e ∨ (-e)`.
    pub fn abs(e: Expr) -> Expr {
        Expr::join(e.clone(), Expr::neg(e))
    }

    /// `e⁺ = e ∨ 0`.
    pub fn pos(e: Expr) -> Expr {
        Expr::join(e, Expr::zero())
    }

    /// Largest variable index used, 0 for a constant expression.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => *i,
            Expr::Neg(a) | Expr::Scale(_, a) => a.max_var(),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }

    pub fn check_arity(&self, arity: usize) -> Result<()> {
        let index = self.max_var();
        if index > arity {
            return Err(Error::VariableOutOfRange { index, arity });
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Neg(a) | Expr::Scale(_, a) => 1 + a.depth(),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Neg(a) | Expr::Scale(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// True when the expression uses no product and no nonzero constant,
    /// i.e. it denotes a positively homogeneous piecewise-linear function.
    pub fn is_lattice_linear(&self) -> bool {
        match self {
            Expr::Const(q) => q.is_zero(),
            Expr::Var(_) => true,
            Expr::Mul(..) => false,
            Expr::Neg(a) | Expr::Scale(_, a) => a.is_lattice_linear(),
            Expr::Add(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
                a.is_lattice_linear() && b.is_lattice_linear()
            }
        }
    }

    /// True when no nonzero constant occurs (products allowed).
    pub fn is_constant_free(&self) -> bool {
        match self {
            Expr::Const(q) => q.is_zero(),
            Expr::Var(_) => true,
            Expr::Neg(a) | Expr::Scale(_, a) => a.is_constant_free(),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
                a.is_constant_free() && b.is_constant_free()
            }
        }
    }

    /// Exact value of the function at `t`. Panics if `t` is shorter than
    /// the largest variable index; use [`eval_point`] for a checked call.
    pub fn eval(&self, t: &[Q]) -> Q {
        match self {
            Expr::Const(q) => q.clone(),
            Expr::Var(i) => t[*i - 1].clone(),
            Expr::Neg(a) => -a.eval(t),
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Scale(q, a) => q * a.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Join(a, b) => {
                let (x, y) = (a.eval(t), b.eval(t));
                if x >= y {
                    x
                } else {
                    y
                }
            }
            Expr::Meet(a, b) => {
                let (x, y) = (a.eval(t), b.eval(t));
                if x <= y {
                    x
                } else {
                    y
                }
            }
        }
    }

    /// Replaces every `Var(j)` by `fs[j-1]`. Expressions carry no binders,
    /// so plain structural replacement is capture free.
    pub fn substitute(&self, fs: &[Expr]) -> Result<Expr> {
        self.check_arity(fs.len())?;
        Ok(self.subst_unchecked(fs))
    }

    fn subst_unchecked(&self, fs: &[Expr]) -> Expr {
        let go = |a: &Expr| Box::new(a.subst_unchecked(fs));
        match self {
            Expr::Const(q) => Expr::Const(q.clone()),
            Expr::Var(j) => fs[*j - 1].clone(),
            Expr::Neg(a) => Expr::Neg(go(a)),
            Expr::Scale(q, a) => Expr::Scale(q.clone(), go(a)),
            Expr::Add(a, b) => Expr::Add(go(a), go(b)),
            Expr::Mul(a, b) => Expr::Mul(go(a), go(b)),
            Expr::Join(a, b) => Expr::Join(go(a), go(b)),
            Expr::Meet(a, b) => Expr::Meet(go(a), go(b)),
        }
    }

    fn as_const(&self) -> Option<&Q> {
        match self {
            Expr::Const(q) => Some(q),
            _ => None,
        }
    }
}

/// Checked evaluation: the point must have exactly `arity` coordinates and
/// the expression must not reference a larger index.
pub fn eval_point(e: &Expr, t: &[Q], arity: usize) -> Result<Q> {
    if t.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            actual: t.len(),
        });
    }
    e.check_arity(arity)?;
    Ok(e.eval(t))
}

/// Collapses every subtree whose leaves are all constants. No other
/// rewriting takes place, so `x1 * 1` stays as it is.
pub fn const_fold(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(a) => {
            let a = const_fold(a);
            match a.as_const() {
                Some(q) => Expr::Const(-q),
                None => Expr::neg(a),
            }
        }
        Expr::Scale(q, a) => {
            let a = const_fold(a);
            match a.as_const() {
                Some(c) => Expr::Const(q * c),
                None => Expr::scale(q.clone(), a),
            }
        }
        Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Join(a, b) | Expr::Meet(a, b) => {
            let (a, b) = (const_fold(a), const_fold(b));
            if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
                let v = match e {
                    Expr::Add(..) => x + y,
                    Expr::Mul(..) => x * y,
                    Expr::Join(..) => rational::max(x, y),
                    _ => rational::min(x, y),
                };
                return Expr::Const(v);
            }
            match e {
                Expr::Add(..) => Expr::add(a, b),
                Expr::Mul(..) => Expr::mul(a, b),
                Expr::Join(..) => Expr::join(a, b),
                _ => Expr::meet(a, b),
            }
        }
    }
}

// Precedence levels used by the printer; they mirror the grammar.
const SUM: u8 = 0;
const PROD: u8 = 1;
const UNARY: u8 = 2;

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) => SUM,
            Expr::Mul(..) | Expr::Scale(..) => PROD,
            Expr::Neg(_) => UNARY,
            Expr::Const(q) if q.is_negative() => UNARY,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.write_bare(f)?;
            return f.write_str(")");
        }
        self.write_bare(f)
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(q) => write!(f, "{q}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Neg(a) => match a.as_ref() {
                Expr::Var(_) | Expr::Join(..) | Expr::Meet(..) => write!(f, "-{a}"),
                // `-3` would read back as a negative literal
                _ => write!(f, "-({a})"),
            },
            Expr::Add(a, b) => {
                a.write_at(f, SUM)?;
                match b.as_ref() {
                    Expr::Neg(inner) => {
                        f.write_str(" - ")?;
                        inner.write_at(f, PROD)
                    }
                    _ => {
                        f.write_str(" + ")?;
                        b.write_at(f, PROD)
                    }
                }
            }
            Expr::Scale(q, a) => {
                write!(f, "{q} * ")?;
                a.write_at(f, UNARY)
            }
            Expr::Mul(a, b) => {
                // a bare literal on the left would read back as a Scale
                if let Expr::Const(q) = a.as_ref() {
                    write!(f, "({q})")?;
                } else {
                    a.write_at(f, PROD)?;
                }
                f.write_str(" * ")?;
                b.write_at(f, UNARY)
            }
            Expr::Join(a, b) => write!(f, "max({a}, {b})"),
            Expr::Meet(a, b) => write!(f, "min({a}, {b})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_bare(f)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(q) => write!(f, "Const({q})"),
            Expr::Var(i) => write!(f, "Var({i})"),
            Expr::Neg(a) => write!(f, "Neg({a:?})"),
            Expr::Add(a, b) => write!(f, "Add({a:?}, {b:?})"),
            Expr::Scale(q, a) => write!(f, "Scale({q}, {a:?})"),
            Expr::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            Expr::Join(a, b) => write!(f, "Join({a:?}, {b:?})"),
            Expr::Meet(a, b) => write!(f, "Meet({a:?}, {b:?})"),
        }
    }
}

/// Pretty printer; `parse(&format(e), n)` reproduces `e` structurally.
pub fn format(e: &Expr) -> String {
    e.to_string()
}
