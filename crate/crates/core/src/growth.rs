//! Polynomial-growth certificates, the `d^m` filtration and certified
//! sup-norm bounds on boxes.
//!
//! Every expression `f` satisfies `|f| <= M (1 + |x1| + ... + |xn|)^N` for a
//! certificate `(M, N)` built by structural recursion. With
//! `d = 1 ∨ |x1| ∨ ... ∨ |xn|` we have `1 + Σ|xi| <= (n+1) d`, so `f` lies in
//! the order ideal generated by `d^N` with constant `M (n+1)^N`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::expr::{Expr, Point};
use crate::interval::{enclose, IntervalBox};
use crate::rational::{self, Q};

/// `|f(t)| <= bound · (1 + Σ|t_i|)^degree` for all `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCert {
    pub bound: Q,
    pub degree: u32,
}

impl GrowthCert {
    /// Right-hand side of the certificate at `t`.
    pub fn envelope(&self, t: &[Q]) -> Q {
        let s = t.iter().fold(rational::one(), |acc, q| acc + q.abs());
        &self.bound * rational::pow(&s, self.degree)
    }

    pub fn holds_at(&self, e: &Expr, t: &[Q]) -> bool {
        e.eval(t).abs() <= self.envelope(t)
    }
}

pub fn growth_certificate(e: &Expr) -> GrowthCert {
    let cert = |bound: Q, degree: u32| GrowthCert { bound, degree };
    match e {
        Expr::Const(c) => cert(c.abs(), 0),
        Expr::Var(_) => cert(rational::one(), 1),
        Expr::Neg(a) => growth_certificate(a),
        Expr::Scale(q, a) => {
            let g = growth_certificate(a);
            cert(q.abs() * g.bound, g.degree)
        }
        Expr::Add(a, b) => {
            let (g, h) = (growth_certificate(a), growth_certificate(b));
            cert(g.bound + h.bound, g.degree.max(h.degree))
        }
        Expr::Mul(a, b) => {
            let (g, h) = (growth_certificate(a), growth_certificate(b));
            cert(g.bound * h.bound, g.degree + h.degree)
        }
        Expr::Join(a, b) | Expr::Meet(a, b) => {
            let (g, h) = (growth_certificate(a), growth_certificate(b));
            cert(rational::max(&g.bound, &h.bound), g.degree.max(h.degree))
        }
    }
}

/// `d(t) = max(1, |t_1|, ..., |t_n|)`.
pub fn d_weight(t: &[Q]) -> Q {
    t.iter()
        .fold(rational::one(), |acc, q| rational::max(&acc, &q.abs()))
}

/// Membership of `f` in the ideal generated by `d^m`, witnessed by
/// `|f| <= constant · d^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWitness {
    pub m: u32,
    pub constant: Q,
}

impl DegreeWitness {
    pub fn holds_at(&self, e: &Expr, t: &[Q]) -> bool {
        e.eval(t).abs() <= &self.constant * rational::pow(&d_weight(t), self.m)
    }

    /// The same constant also witnesses membership one level up, since `d >= 1`.
    pub fn lift(&self) -> DegreeWitness {
        DegreeWitness {
            m: self.m + 1,
            constant: self.constant.clone(),
        }
    }
}

pub fn ideal_degree_upper(e: &Expr, arity: usize) -> DegreeWitness {
    let g = growth_certificate(e);
    let base = rational::int(arity as i64 + 1);
    DegreeWitness {
        m: g.degree,
        constant: g.bound * rational::pow(&base, g.degree),
    }
}

/// Certified lower bound for `‖e‖_{d^m}`: the largest `|e(t)| / d(t)^m`
/// over the given points, together with the maximizing point.
pub fn dm_norm_lower(e: &Expr, m: u32, points: &[Point]) -> (Q, Option<Point>) {
    let mut best = rational::zero();
    let mut arg = None;
    for t in points {
        let r = e.eval(t).abs() / rational::pow(&d_weight(t), m);
        if arg.is_none() || r > best {
            best = r;
            arg = Some(t.clone());
        }
    }
    (best, arg)
}

/// Sweep used by `dm_norm_lower` by default: a grid reaching beyond the unit
/// cube plus rays scaled out to `2^10`.
pub fn default_sweep(n: usize) -> Vec<Point> {
    let values: Vec<Q> = [(-4, 1), (-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1), (4, 1)]
        .iter()
        .map(|&(a, b)| rational::ratio(a, b))
        .collect();
    let plan = crate::sampling::SamplingPlan {
        grid: values,
        random_points: 32,
        ..Default::default()
    };
    let mut pts = plan.points(n);
    let dirs = cube_boundary(n, 4);
    for k in [4u32, 10] {
        let r = rational::pow(&rational::int(2), k);
        pts.extend(dirs.iter().map(|p| p.iter().map(|q| q * &r).collect::<Vec<_>>()));
    }
    pts
}

/// Points of the boundary of `[-1,1]^n` on the grid with spacing `1/steps`.
pub fn cube_boundary(n: usize, steps: u32) -> Vec<Point> {
    let s = steps.max(1) as i64;
    let values: Vec<Q> = (-s..=s).map(|j| rational::ratio(j, s)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if n == 0 {
        return out;
    }
    loop {
        let p: Point = idx.iter().map(|&i| values[i].clone()).collect();
        if p.iter().any(|q| q.abs().is_one()) {
            out.push(p);
        }
        let mut carry = true;
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < values.len() {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            return out;
        }
    }
}

/// Result of the branch-and-bound sup computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupBound {
    pub lower: Q,
    pub upper: Q,
    /// Point where `|e|` equals `lower`.
    pub argmax: Point,
    /// Boxes created during the search.
    pub nodes: usize,
    pub budget_exhausted: bool,
}

pub const DEFAULT_NODE_BUDGET: usize = 100_000;

struct Pending {
    upper: Q,
    seq: usize,
    region: IntervalBox,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    // max-heap on the upper bound, earlier boxes first on ties
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .cmp(&other.upper)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Brackets `sup_{t ∈ region} |e(t)|` to within `tol` by best-first
/// branch-and-bound on interval enclosures. Boxes are bisected along their
/// widest side and discarded once their enclosure cannot beat the incumbent.
pub fn box_sup_bound(e: &Expr, region: &IntervalBox, tol: &Q, budget: usize) -> Result<SupBound> {
    if !tol.is_positive() {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    e.check_arity(region.dim())?;

    let mut lower = rational::zero();
    let mut argmax: Option<Point> = None;
    let offer = |t: Point, lower: &mut Q, argmax: &mut Option<Point>| {
        let v = e.eval(&t).abs();
        if argmax.is_none() || v > *lower {
            *lower = v;
            *argmax = Some(t);
        }
    };

    offer(region.midpoint(), &mut lower, &mut argmax);
    if region.dim() <= 10 {
        for c in region.corners() {
            offer(c, &mut lower, &mut argmax);
        }
    }

    let mut heap = BinaryHeap::new();
    let mut seq = 0usize;
    heap.push(Pending {
        upper: enclose(e, region).mag(),
        seq,
        region: region.clone(),
    });
    let mut nodes = 1usize;
    let mut exhausted = false;

    while let Some(top) = heap.peek() {
        if &top.upper - &lower <= *tol {
            break;
        }
        if nodes >= budget {
            exhausted = true;
            break;
        }
        let top = heap.pop().expect("peeked");
        let (a, b) = top.region.bisect_widest();
        for child in [a, b] {
            nodes += 1;
            seq += 1;
            offer(child.midpoint(), &mut lower, &mut argmax);
            let upper = enclose(e, &child).mag();
            if upper > lower {
                heap.push(Pending {
                    upper,
                    seq,
                    region: child,
                });
            }
        }
    }

    let upper = heap
        .peek()
        .map_or(lower.clone(), |top| rational::max(&top.upper, &lower));
    Ok(SupBound {
        lower,
        upper,
        argmax: argmax.expect("at least the midpoint was evaluated"),
        nodes,
        budget_exhausted: exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::rational::{int, ratio};

    #[test]
    fn certificates_follow_the_structural_rules() {
        let cert = |s: &str| growth_certificate(&parse(s, 2).unwrap());
        assert_eq!(cert("1"), GrowthCert { bound: int(1), degree: 0 });
        assert_eq!(cert("x1 * x2"), GrowthCert { bound: int(1), degree: 2 });
        assert_eq!(cert("max(2 * x1, 1)"), GrowthCert { bound: int(2), degree: 1 });
        assert_eq!(cert("-3/2"), GrowthCert { bound: ratio(3, 2), degree: 0 });
        assert_eq!(cert("x1 + x2 * x2"), GrowthCert { bound: int(2), degree: 2 });
    }

    #[test]
    fn ideal_degrees() {
        let w = ideal_degree_upper(&Expr::one(), 1);
        assert_eq!((w.m, w.constant), (0, int(1)));
        assert_eq!(ideal_degree_upper(&parse("x1 * x1 + 1", 1).unwrap(), 1).m, 2);
        assert_eq!(ideal_degree_upper(&parse("abs(x1)", 1).unwrap(), 1).m, 1);
    }

    #[test]
    fn d_weight_is_at_least_one() {
        assert_eq!(d_weight(&[ratio(1, 2), ratio(-1, 3)]), int(1));
        assert_eq!(d_weight(&[int(-3), int(2)]), int(3));
    }

    #[test]
    fn dm_norm_examples() {
        let sweep = default_sweep(1);
        let x1 = parse("x1", 1).unwrap();
        assert_eq!(dm_norm_lower(&x1, 1, &sweep).0, int(1));
        assert_eq!(dm_norm_lower(&Expr::one(), 0, &sweep).0, int(1));
        assert_eq!(dm_norm_lower(&parse("x1 * x1", 1).unwrap(), 2, &sweep).0, int(1));
    }

    #[test]
    fn boundary_grid() {
        assert_eq!(cube_boundary(1, 4), vec![vec![int(-1)], vec![int(1)]]);
        // 9x9 grid minus the 7x7 interior
        assert_eq!(cube_boundary(2, 4).len(), 81 - 49);
    }

    #[test]
    fn constant_dominated_sup_is_exact() {
        let e = parse("max(abs(x1), 1)", 1).unwrap();
        let r = box_sup_bound(&e, &IntervalBox::unit_cube(1), &ratio(1, 1000), DEFAULT_NODE_BUDGET)
            .unwrap();
        assert_eq!((r.lower, r.upper), (int(1), int(1)));
    }

    #[test]
    fn abs_on_the_cube() {
        let e = parse("abs(x1)", 1).unwrap();
        let r = box_sup_bound(&e, &IntervalBox::unit_cube(1), &ratio(1, 1000), DEFAULT_NODE_BUDGET)
            .unwrap();
        assert!(r.lower <= int(1) && int(1) <= r.upper);
        assert_eq!(e.eval(&r.argmax).abs(), r.lower);
    }

    #[test]
    fn rejects_nonpositive_tolerance_and_reports_budget() {
        let e = parse("x1 * (1 - x1)", 1).unwrap();
        let region = IntervalBox::parse("0,1").unwrap();
        assert!(box_sup_bound(&e, &region, &int(0), 10).is_err());
        let r = box_sup_bound(&e, &region, &ratio(1, 1_000_000), 5).unwrap();
        assert!(r.budget_exhausted);
        assert!(r.lower <= ratio(1, 4) && ratio(1, 4) <= r.upper);
    }
}
