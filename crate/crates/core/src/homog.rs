//! First-order behaviour at the origin.
//!
//! Every expression satisfies `f(tx) = c + t·φ(x) + o(t)` as `t → 0⁺`,
//! uniformly for `x` in bounded sets, with `φ` positively homogeneous. The
//! pair `(c, φ)` is computed by structural recursion; `f` has a homogeneous
//! part `f_h = φ` exactly when `c = 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{Expr, Point};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    /// `f(0)`.
    pub c: Q,
    /// One-sided ray derivative at the origin; lattice-linear.
    pub phi: Expr,
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(q) if q.is_zero())
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        b
    } else if is_zero(&b) {
        a
    } else {
        Expr::add(a, b)
    }
}

fn scale(q: &Q, a: Expr) -> Expr {
    if q.is_zero() || is_zero(&a) {
        Expr::zero()
    } else if q.is_one() {
        a
    } else {
        Expr::scale(q.clone(), a)
    }
}

fn neg(a: Expr) -> Expr {
    if is_zero(&a) {
        a
    } else {
        Expr::neg(a)
    }
}

pub fn linearize(e: &Expr) -> Linearization {
    let lin = |c: Q, phi: Expr| Linearization { c, phi };
    match e {
        Expr::Const(q) => lin(q.clone(), Expr::zero()),
        Expr::Var(i) => lin(rational::zero(), Expr::var(*i)),
        Expr::Neg(a) => {
            let l = linearize(a);
            lin(-l.c, neg(l.phi))
        }
        Expr::Scale(q, a) => {
            let l = linearize(a);
            lin(q * l.c, scale(q, l.phi))
        }
        Expr::Add(a, b) => {
            let (f, g) = (linearize(a), linearize(b));
            lin(f.c + g.c, add(f.phi, g.phi))
        }
        Expr::Mul(a, b) => {
            // (a + tφ)(b + tγ) = ab + t(aγ + bφ) + t²φγ
            let (f, g) = (linearize(a), linearize(b));
            let phi = add(scale(&f.c, g.phi), scale(&g.c, f.phi));
            lin(f.c * g.c, phi)
        }
        Expr::Join(a, b) | Expr::Meet(a, b) => {
            let (f, g) = (linearize(a), linearize(b));
            let is_join = matches!(e, Expr::Join(..));
            // for small t the branch with the strictly better constant wins
            let prefer_f = if is_join { f.c > g.c } else { f.c < g.c };
            let prefer_g = if is_join { g.c > f.c } else { g.c < f.c };
            if prefer_f {
                f
            } else if prefer_g {
                g
            } else {
                let phi = if is_zero(&f.phi) && is_zero(&g.phi) {
                    Expr::zero()
                } else if is_join {
                    Expr::join(f.phi, g.phi)
                } else {
                    Expr::meet(f.phi, g.phi)
                };
                lin(f.c, phi)
            }
        }
    }
}

/// Membership in the subalgebra of functions with a homogeneous part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HPart {
    /// `f_h`, a lattice-linear expression.
    Member(Expr),
    /// `f(0) ≠ 0`, so `f(tx)/t` diverges.
    NotMember { value_at_origin: Q },
}

pub fn h_part(e: &Expr) -> HPart {
    let l = linearize(e);
    if l.c.is_zero() {
        HPart::Member(l.phi)
    } else {
        HPart::NotMember {
            value_at_origin: l.c,
        }
    }
}

/// Residuals of the difference quotient along a shrinking sequence of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCheckReport {
    /// `(t, max over directions of |f(tx)/t - f_h(x)|)` in sequence order.
    pub residuals: Vec<(Q, Q)>,
    /// Residuals never increase along the sequence.
    pub nonincreasing: bool,
    /// First position at which the residual increased, with the direction
    /// responsible for the larger value.
    pub first_increase: Option<(usize, Point)>,
    pub tolerance: Q,
    pub passed: bool,
}

/// `t = 2^-k` for `k = 1..=12`.
pub fn default_t_sequence() -> Vec<Q> {
    (1..=12).map(rational::dyadic).collect()
}

/// Exact difference-quotient check of `f_h`. Requires `f(0) = 0`.
/// Passes when the per-`t` maximal residual is nonincreasing and the last
/// one is at most `tolerance`.
pub fn numeric_h_check(
    e: &Expr,
    directions: &[Point],
    ts: &[Q],
    tolerance: &Q,
) -> Result<HCheckReport> {
    let fh = match h_part(e) {
        HPart::Member(fh) => fh,
        HPart::NotMember { value_at_origin } => {
            return Err(Error::Invalid(format!(
                "expression is {value_at_origin} at the origin; no homogeneous part"
            )))
        }
    };
    let n = directions.first().map_or(0, Vec::len);
    e.check_arity(n)?;
    let targets: Vec<Q> = directions.iter().map(|x| fh.eval(x)).collect();

    let mut residuals = Vec::with_capacity(ts.len());
    let mut argmaxes = Vec::with_capacity(ts.len());
    for t in ts {
        let mut worst = rational::zero();
        let mut arg = 0;
        for (i, (x, target)) in directions.iter().zip(&targets).enumerate() {
            let scaled: Point = x.iter().map(|q| q * t).collect();
            let r = (e.eval(&scaled) / t - target).abs();
            if r > worst {
                worst = r;
                arg = i;
            }
        }
        residuals.push((t.clone(), worst));
        argmaxes.push(arg);
    }

    let first_increase = residuals
        .windows(2)
        .position(|w| w[1].1 > w[0].1)
        .map(|i| (i + 1, directions[argmaxes[i + 1]].clone()));
    let nonincreasing = first_increase.is_none();
    let last_ok = residuals.last().is_none_or(|(_, r)| r <= tolerance);
    Ok(HCheckReport {
        passed: nonincreasing && last_ok,
        residuals,
        nonincreasing,
        first_increase,
        tolerance: tolerance.clone(),
    })
}
