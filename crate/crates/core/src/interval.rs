//! Closed rational intervals and the natural interval extension of
//! expressions.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Expr, Point};
use crate::rational::{self, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(q: Q) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, q: &Q) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Upper bound of `|v|` over the interval.
    pub fn mag(&self) -> Q {
        rational::max(&rational::abs(&self.lo), &rational::abs(&self.hi))
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn scale(&self, q: &Q) -> Interval {
        let (a, b) = (q * &self.lo, q * &self.hi);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }

    pub fn join(&self, o: &Interval) -> Interval {
        Interval {
            lo: rational::max(&self.lo, &o.lo),
            hi: rational::max(&self.hi, &o.hi),
        }
    }

    pub fn meet(&self, o: &Interval) -> Interval {
        Interval {
            lo: rational::min(&self.lo, &o.lo),
            hi: rational::min(&self.hi, &o.hi),
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Interval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A nonempty axis-aligned box in `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalBox(Vec<Interval>);

impl IntervalBox {
    pub fn new(sides: Vec<Interval>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::Invalid("a box needs at least one side".into()));
        }
        Ok(IntervalBox(sides))
    }

    /// The cube `[-1, 1]^n`.
    pub fn unit_cube(n: usize) -> Self {
        IntervalBox(vec![
            Interval::new(rational::int(-1), rational::one()).expect("ordered");
            n.max(1)
        ])
    }

    /// Parses `a1,b1;a2,b2;...`.
    pub fn parse(text: &str) -> Result<Self> {
        let sides = text
            .split(';')
            .map(|side| {
                let v = rational::parse_vector(side)?;
                match v.as_slice() {
                    [a, b] => Interval::new(a.clone(), b.clone()),
                    _ => Err(Error::Invalid(format!("box side `{side}` needs two bounds"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        IntervalBox::new(sides)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.0
    }

    pub fn midpoint(&self) -> Point {
        self.0.iter().map(Interval::midpoint).collect()
    }

    pub fn contains(&self, t: &[Q]) -> bool {
        t.len() == self.0.len() && self.0.iter().zip(t).all(|(s, q)| s.contains(q))
    }

    /// Index of the widest side, lowest index on ties.
    pub fn widest(&self) -> usize {
        let mut best = 0;
        for (i, s) in self.0.iter().enumerate().skip(1) {
            if s.width() > self.0[best].width() {
                best = i;
            }
        }
        best
    }

    pub fn bisect_widest(&self) -> (IntervalBox, IntervalBox) {
        let i = self.widest();
        let (a, b) = self.0[i].bisect();
        let mut left = self.0.clone();
        let mut right = self.0.clone();
        left[i] = a;
        right[i] = b;
        (IntervalBox(left), IntervalBox(right))
    }

    /// All `2^n` vertices in binary counting order.
    pub fn corners(&self) -> Vec<Point> {
        let n = self.0.len();
        (0..1usize << n)
            .map(|mask| {
                self.0
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        if mask >> i & 1 == 1 {
                            s.hi.clone()
                        } else {
                            s.lo.clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Natural interval extension: every constructor is replaced by its
/// interval counterpart. The result encloses `e(t)` for every `t` in the box.
pub fn enclose(e: &Expr, b: &IntervalBox) -> Interval {
    match e {
        Expr::Const(q) => Interval::point(q.clone()),
        Expr::Var(i) => b.0[*i - 1].clone(),
        Expr::Neg(a) => enclose(a, b).neg(),
        Expr::Add(x, y) => enclose(x, b).add(&enclose(y, b)),
        Expr::Scale(q, a) => enclose(a, b).scale(q),
        Expr::Mul(x, y) => enclose(x, b).mul(&enclose(y, b)),
        Expr::Join(x, y) => enclose(x, b).join(&enclose(y, b)),
        Expr::Meet(x, y) => enclose(x, b).meet(&enclose(y, b)),
    }
}
