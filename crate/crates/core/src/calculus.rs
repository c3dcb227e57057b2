//! Function calculus on lattice-ordered algebras with identity.
//!
//! `Ψ_x` sends the constant one function to `1_X`, the `i`-th projection to
//! `x_i`, and commutes with every operation. On the generated
//! sublattice-algebra this pins it down completely, so it is computed by
//! homomorphic evaluation of the expression tree.

use std::fmt::Debug;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::models::{AlgebraModel, Pointwise};
use crate::parser::parse;
use crate::rational::{self, Q};
use crate::sampling::{self, rng_for};

/// A model with identity together with the tuple `x = (x_1, ..., x_n)`.
#[derive(Debug, Clone)]
pub struct CalculusInstance<'m, M: AlgebraModel> {
    model: &'m M,
    one: M::Elem,
    xs: Vec<M::Elem>,
}

impl<'m, M: AlgebraModel> CalculusInstance<'m, M> {
    pub fn new(model: &'m M, xs: Vec<M::Elem>) -> Result<Self> {
        let one = model.identity().ok_or(Error::NoIdentity)?;
        Ok(CalculusInstance { model, one, xs })
    }

    pub fn arity(&self) -> usize {
        self.xs.len()
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn tuple(&self) -> &[M::Elem] {
        &self.xs
    }

    fn eval(&self, e: &Expr) -> M::Elem {
        let m = self.model;
        match e {
            Expr::Const(q) => m.scale(q, &self.one),
            Expr::Var(i) => self.xs[*i - 1].clone(),
            Expr::Neg(a) => m.neg(&self.eval(a)),
            Expr::Scale(q, a) => m.scale(q, &self.eval(a)),
            Expr::Add(a, b) => m.add(&self.eval(a), &self.eval(b)),
            Expr::Mul(a, b) => m.mul(&self.eval(a), &self.eval(b)),
            Expr::Join(a, b) => m.join(&self.eval(a), &self.eval(b)),
            Expr::Meet(a, b) => m.meet(&self.eval(a), &self.eval(b)),
        }
    }
}

/// `Ψ_x(e)`.
pub fn apply_calculus<M: AlgebraModel>(e: &Expr, inst: &CalculusInstance<'_, M>) -> Result<M::Elem> {
    e.check_arity(inst.arity())?;
    Ok(inst.eval(e))
}

/// Coordinate `j` of the result is `e(x_1[j], ..., x_n[j])`: the calculus
/// of `Q^k` read as functions on `k` points, computed by point evaluation.
pub fn pointwise_oracle(e: &Expr, xs: &[Vec<Q>], k: usize) -> Result<Vec<Q>> {
    e.check_arity(xs.len())?;
    if let Some(bad) = xs.iter().find(|x| x.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: bad.len(),
        });
    }
    Ok((0..k)
        .map(|j| {
            let t: Vec<Q> = xs.iter().map(|x| x[j].clone()).collect();
            e.eval(&t)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoReport<E> {
    /// `Ψ_{(Ψ_x(f_1), ..., Ψ_x(f_m))}(g)`.
    pub lhs: E,
    /// `Ψ_x(g ∘ (f_1 × ... × f_m))`.
    pub rhs: E,
    pub equal: bool,
}

/// Composition law: evaluating `g` at the images of the `f_i` agrees with
/// evaluating the substituted expression.
pub fn compo_check<M: AlgebraModel>(
    g: &Expr,
    fs: &[Expr],
    inst: &CalculusInstance<'_, M>,
) -> Result<CompoReport<M::Elem>> {
    let images = fs
        .iter()
        .map(|f| apply_calculus(f, inst))
        .collect::<Result<Vec<_>>>()?;
    let inner = CalculusInstance::new(inst.model, images)?;
    let lhs = apply_calculus(g, &inner)?;
    let rhs = apply_calculus(&g.substitute(fs)?, inst)?;
    let equal = inst.model.elem_eq(&lhs, &rhs);
    Ok(CompoReport { lhs, rhs, equal })
}

/// First coordinate (1-based) where two vectors differ.
pub fn witness_coordinate(a: &[Q], b: &[Q]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|j| j + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisjointnessOutcome<E> {
    /// The inputs were not positive and pairwise as required.
    PreconditionViolated(String),
    Checked {
        /// `(x_3 x_1) ∧ x_2`.
        left: E,
        /// `(x_1 x_3) ∧ x_2`.
        right: E,
        /// `x_1 x_2`, zero in any f-algebra.
        product: E,
        meets_vanish: bool,
        product_vanishes: bool,
    },
}

impl<E> DisjointnessOutcome<E> {
    pub fn passed(&self) -> bool {
        matches!(
            self,
            DisjointnessOutcome::Checked {
                meets_vanish: true,
                product_vanishes: true,
                ..
            }
        )
    }
}

/// For positive `x_1 ⊥ x_2` and positive `x_3`, an f-algebra satisfies
/// `(x_3 x_1) ∧ x_2 = 0`, its mirror, and `x_1 x_2 = 0`.
pub fn disjointness_mult_check<M: AlgebraModel>(
    m: &M,
    x1: &M::Elem,
    x2: &M::Elem,
    x3: &M::Elem,
) -> DisjointnessOutcome<M::Elem> {
    let zero = m.zero();
    for (name, x) in [("x1", x1), ("x2", x2), ("x3", x3)] {
        if !m.leq(&zero, x) {
            return DisjointnessOutcome::PreconditionViolated(format!(
                "{name} = {} is not positive",
                m.describe(x)
            ));
        }
    }
    if !m.is_zero(&m.meet(x1, x2)) {
        return DisjointnessOutcome::PreconditionViolated(format!(
            "x1 ∧ x2 = {} is not zero",
            m.describe(&m.meet(x1, x2))
        ));
    }
    let left = m.meet(&m.mul(x3, x1), x2);
    let right = m.meet(&m.mul(x1, x3), x2);
    let product = m.mul(x1, x2);
    DisjointnessOutcome::Checked {
        meets_vanish: m.is_zero(&left) && m.is_zero(&right),
        product_vanishes: m.is_zero(&product),
        left,
        right,
        product,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffReport<E> {
    /// `x_1⁺ ∧ (x_1⁻ x_2⁺)`.
    pub left: E,
    /// `x_1⁺ ∧ (x_2⁺ x_1⁻)`.
    pub right: E,
    pub passed: bool,
}

/// Both Birkhoff identities; a lattice-ordered algebra is an f-algebra iff
/// they hold for all `x_1, x_2`.
pub fn birkhoff_check<M: AlgebraModel>(m: &M, x1: &M::Elem, x2: &M::Elem) -> BirkhoffReport<M::Elem> {
    let p1 = m.pos(x1);
    let n1 = m.neg_part(x1);
    let p2 = m.pos(x2);
    let left = m.meet(&p1, &m.mul(&n1, &p2));
    let right = m.meet(&p1, &m.mul(&p2, &n1));
    let passed = m.is_zero(&left) && m.is_zero(&right);
    BirkhoffReport {
        left,
        right,
        passed,
    }
}

/// Integer vectors of `{-r, ..., r}^dim` ordered by sup-norm shell, then
/// lexicographically with larger entries first.
pub fn shell_grid(dim: usize, r: i64) -> Vec<Vec<Q>> {
    let side = (2 * r + 1) as usize;
    let total = side.pow(dim as u32);
    let mut pts: Vec<Vec<i64>> = (0..total)
        .map(|mut code| {
            let mut v = vec![0i64; dim];
            for slot in v.iter_mut().rev() {
                *slot = r - (code % side) as i64;
                code /= side;
            }
            v
        })
        .collect();
    pts.sort_by(|a, b| {
        let shell = |v: &Vec<i64>| v.iter().map(|x| x.abs()).max().unwrap_or(0);
        shell(a).cmp(&shell(b)).then_with(|| b.cmp(a))
    });
    pts.into_iter()
        .map(|v| v.into_iter().map(rational::int).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSearchResult<E> {
    pub pairs_examined: usize,
    pub violations: usize,
    /// First violating pair in search order with its Birkhoff values.
    pub first: Option<(E, E, BirkhoffReport<E>)>,
}

/// Exhaustive Birkhoff search over pairs from [`shell_grid`].
pub fn birkhoff_grid_search<M: AlgebraModel<Elem = Vec<Q>>>(
    m: &M,
    dim: usize,
    r: i64,
) -> GridSearchResult<Vec<Q>> {
    let grid = shell_grid(dim, r);
    let mut result = GridSearchResult {
        pairs_examined: 0,
        violations: 0,
        first: None,
    };
    for x1 in &grid {
        for x2 in &grid {
            result.pairs_examined += 1;
            let rep = birkhoff_check(m, x1, x2);
            if !rep.passed {
                result.violations += 1;
                if result.first.is_none() {
                    result.first = Some((x1.clone(), x2.clone(), rep));
                }
            }
        }
    }
    result
}

/// A linear evaluation map from constant-free expressions and tuples to
/// elements, with no order or product of its own.
pub trait RawCalculus: Sync {
    fn dim(&self) -> usize;
    fn eval_raw(&self, e: &Expr, xs: &[Vec<Q>]) -> Result<Vec<Q>>;
}

fn require_constant_free(e: &Expr) -> Result<()> {
    if !e.is_constant_free() {
        return Err(Error::Invalid(format!(
            "raw calculus only accepts constant-free expressions, got `{e}`"
        )));
    }
    Ok(())
}

/// The raw calculus of `Q^k` (point evaluation), forgetting its order and
/// product.
#[derive(Debug, Clone, Copy)]
pub struct PointwiseRaw {
    pub k: usize,
}

impl RawCalculus for PointwiseRaw {
    fn dim(&self) -> usize {
        self.k
    }

    fn eval_raw(&self, e: &Expr, xs: &[Vec<Q>]) -> Result<Vec<Q>> {
        require_constant_free(e)?;
        pointwise_oracle(e, xs, self.k)
    }
}

/// Wraps a raw calculus and perturbs exactly one evaluation, breaking the
/// composition law there.
#[derive(Debug, Clone)]
pub struct PlantedRaw<R> {
    pub inner: R,
    pub expr: Expr,
    pub args: Vec<Vec<Q>>,
    pub offset: Vec<Q>,
}

impl<R: RawCalculus> RawCalculus for PlantedRaw<R> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval_raw(&self, e: &Expr, xs: &[Vec<Q>]) -> Result<Vec<Q>> {
        let v = self.inner.eval_raw(e, xs)?;
        if e == &self.expr && xs == self.args.as_slice() {
            return Ok(v.iter().zip(&self.offset).map(|(a, b)| a + b).collect());
        }
        Ok(v)
    }
}

fn raw2(raw: &dyn RawCalculus, src: &str, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
    raw.eval_raw(&parse(src, 2)?, &[a.to_vec(), b.to_vec()])
}

/// `σ(a, b)` where `σ(t_1, t_2) = t_1 ∨ t_2`.
pub fn derive_join(raw: &dyn RawCalculus, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
    raw2(raw, "max(x1, x2)", a, b)
}

/// `a <= b` iff `σ(a, b) = b`.
pub fn derive_order(raw: &dyn RawCalculus, a: &[Q], b: &[Q]) -> Result<bool> {
    Ok(derive_join(raw, a, b)? == b)
}

/// `ρ(a, b)` where `ρ(t_1, t_2) = t_1 t_2`.
pub fn derive_product(raw: &dyn RawCalculus, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
    raw2(raw, "x1 * x2", a, b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionFailure {
    pub identity: String,
    /// Trial index; probes are numbered after the random trials.
    pub trial: usize,
    pub inputs: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub trials: usize,
    pub identities: Vec<String>,
    pub failures: Vec<ReconstructionFailure>,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Composites `g ∘ (f_1 × f_2 × f_3)` that the derived-structure argument
/// evaluates; each is checked against the nested evaluation.
pub fn compo_cases() -> Vec<(Expr, Vec<Expr>)> {
    let p = |s: &str| parse(s, 3).expect("fixed composite");
    vec![
        (p("x1 * x2"), vec![p("max(x1, 0)"), p("max(x2, 0)"), p("0")]),
        (p("max(x1, x2)"), vec![p("max(x1, 0) * max(x2, 0)"), p("0"), p("0")]),
        (p("x1 * x2"), vec![p("max(-x1, 0)"), p("max(x2, 0)"), p("0")]),
        (
            p("max(x1, x2)"),
            vec![p("-max(x1, 0)"), p("-(max(-x1, 0) * max(x2, 0))"), p("0")],
        ),
        (p("x1 * x2"), vec![p("x1"), p("x2 + x3"), p("0")]),
        (p("x1 * x2"), vec![p("x1 * x2"), p("x3"), p("0")]),
    ]
}

fn reconstruction_trial(
    raw: &dyn RawCalculus,
    native: &Pointwise,
    inputs: &[Vec<Q>; 3],
    lambda: &Q,
    mu: &Q,
    cases: &[(Expr, Vec<Expr>)],
) -> Result<Vec<(String, bool)>> {
    let [a, b, c] = inputs;
    let zero = native.zero();
    let sigma = |u: &[Q], v: &[Q]| derive_join(raw, u, v);
    let rho = |u: &[Q], v: &[Q]| derive_product(raw, u, v);
    let neg = |u: &[Q]| -> Vec<Q> { u.iter().map(|q| -q).collect() };
    let add = |u: &[Q], v: &[Q]| -> Vec<Q> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    let scale = |s: &Q, u: &[Q]| -> Vec<Q> { u.iter().map(|q| s * q).collect() };

    let mut out = Vec::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));

    let xs = vec![a.clone(), b.clone(), c.clone()];
    let proj_ok = (1..=3).all(|i| {
        raw.eval_raw(&Expr::var(i), &xs)
            .map(|v| v == xs[i - 1])
            .unwrap_or(false)
    });
    push("proj", proj_ok);
    let lin = raw.eval_raw(&parse("x1 + x2", 2)?, &[a.clone(), b.clone()])? == add(a, b)
        && raw.eval_raw(&Expr::scale(lambda.clone(), Expr::var(1)), std::slice::from_ref(a))?
            == scale(lambda, a);
    push("linearity", lin);

    push("derived-order", derive_order(raw, a, b)? == native.leq(a, b));
    let ab = native.join(a, b);
    push("derived-order-join", derive_order(raw, a, &ab)?);
    push("derived-join", sigma(a, b)? == ab);
    push("derived-product", rho(a, b)? == native.mul(a, b));
    push("commutativity", rho(a, b)? == rho(b, a)?);
    push("associativity", rho(&rho(a, b)?, c)? == rho(a, &rho(b, c)?)?);
    push("distributivity", rho(a, &add(b, c))? == add(&rho(a, b)?, &rho(a, c)?));
    push(
        "scalar-associativity",
        rho(&scale(lambda, a), &scale(mu, b))? == scale(&(lambda * mu), &rho(a, b)?),
    );
    let (ap, bp) = (sigma(a, &zero)?, sigma(b, &zero)?);
    let prod = rho(&ap, &bp)?;
    push("positivity", sigma(&prod, &zero)? == prod);
    let an = sigma(&neg(a), &zero)?;
    let left = sigma(&neg(&ap), &neg(&rho(&an, &bp)?))?;
    push("birkhoff-left", left == zero);
    let right = sigma(&neg(&ap), &neg(&rho(&bp, &an)?))?;
    push("birkhoff-right", right == zero);

    for (g, fs) in cases {
        let images = fs
            .iter()
            .map(|f| raw.eval_raw(f, &xs))
            .collect::<Result<Vec<_>>>()?;
        let nested = raw.eval_raw(g, &images)?;
        let flat = raw.eval_raw(&g.substitute(fs)?, &xs)?;
        let label = fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ");
        push(&format!("compo[{g} ∘ ({label})]"), nested == flat);
    }
    Ok(out)
}

/// Rebuilds order and product from a raw calculus over `Q^k` and checks
/// every derived-structure identity on `trials` random triples plus the
/// given probe triples.
pub fn reconstruction_suite(
    raw: &dyn RawCalculus,
    trials: usize,
    seed: u64,
    probes: &[[Vec<Q>; 3]],
) -> Result<ReconstructionReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let native = Pointwise::new(raw.dim())?;
    let cases = compo_cases();
    let draw = |i: usize| -> ([Vec<Q>; 3], Q, Q) {
        if i < trials {
            let mut rng = rng_for(seed, i as u64);
            let k = native.k;
            let inputs = [
                sampling::sample_vector(&mut rng, k, 8),
                sampling::sample_vector(&mut rng, k, 8),
                sampling::sample_vector(&mut rng, k, 8),
            ];
            let lambda = sampling::sample_rational(&mut rng, 8);
            let mu = sampling::sample_rational(&mut rng, 8);
            (inputs, lambda, mu)
        } else {
            (probes[i - trials].clone(), rational::int(2), rational::ratio(-1, 2))
        }
    };
    let total = trials + probes.len();
    let rows: Vec<Vec<(String, bool)>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let (inputs, lambda, mu) = draw(i);
            reconstruction_trial(raw, &native, &inputs, &lambda, &mu, &cases)
        })
        .collect::<Result<_>>()?;
    let identities: Vec<String> = rows
        .first()
        .map(|r| r.iter().map(|(n, _)| n.clone()).collect())
        .unwrap_or_default();
    let mut failures = Vec::new();
    for (j, name) in identities.iter().enumerate() {
        if let Some(trial) = rows.iter().position(|r| !r[j].1) {
            failures.push(ReconstructionFailure {
                identity: name.clone(),
                trial,
                inputs: draw(trial).0.to_vec(),
            });
        }
    }
    Ok(ReconstructionReport {
        trials: total,
        identities,
        failures,
    })
}
