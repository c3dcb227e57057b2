//! Concrete lattice-ordered algebras.
//!
//! All finite models share the carrier `Vec<Q>` so they can be mixed behind
//! [`FiniteModel`]; the polynomial demo model works on expressions instead.

use std::fmt::Debug;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::gen::ExprGen;
use crate::rational::{self, Q};
use crate::sampling::{self, rng_for, semantic_eq, SamplingPlan, TrialRng};

/// A lattice-ordered algebra over the rationals, possibly with identity.
pub trait AlgebraModel: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn identity(&self) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, q: &Q, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Random element with entries bounded by `bound` (numerators and denominators).
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Self::Elem;
    fn describe(&self, a: &Self::Elem) -> String;

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    /// `a <= b` iff `a ∨ b = b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.elem_eq(&self.join(a, b), b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(&rational::int(-1), a)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pos(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.zero())
    }

    /// `a⁻ = (-a) ∨ 0`.
    fn neg_part(&self, a: &Self::Elem) -> Self::Elem {
        self.join(&self.neg(a), &self.zero())
    }

    fn abs(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.neg(a))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.zero())
    }
}

fn zip_with(a: &[Q], b: &[Q], f: impl Fn(&Q, &Q) -> Q) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    zip_with(a, b, |x, y| x + y)
}

fn vec_scale(q: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| q * x).collect()
}

fn vec_join(a: &[Q], b: &[Q]) -> Vec<Q> {
    zip_with(a, b, rational::max)
}

fn vec_meet(a: &[Q], b: &[Q]) -> Vec<Q> {
    zip_with(a, b, rational::min)
}

/// `Q^k` with every operation coordinatewise: the values of a function on
/// `k` grid nodes. A commutative f-algebra with identity `(1, ..., 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pointwise {
    pub k: usize,
}

impl Pointwise {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("pointwise model needs dimension >= 1".into()));
        }
        Ok(Pointwise { k })
    }
}

impl AlgebraModel for Pointwise {
    type Elem = Vec<Q>;

    fn name(&self) -> String {
        format!("pointwise({})", self.k)
    }
    fn zero(&self) -> Vec<Q> {
        vec![rational::zero(); self.k]
    }
    fn identity(&self) -> Option<Vec<Q>> {
        Some(vec![rational::one(); self.k])
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_add(a, b)
    }
    fn scale(&self, q: &Q, a: &Vec<Q>) -> Vec<Q> {
        vec_scale(q, a)
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        zip_with(a, b, |x, y| x * y)
    }
    fn join(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_join(a, b)
    }
    fn meet(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_meet(a, b)
    }
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Vec<Q> {
        sampling::sample_vector(rng, self.k, bound)
    }
    fn describe(&self, a: &Vec<Q>) -> String {
        rational::format_vector(a)
    }
}

/// `R^2` with the coordinatewise lattice and the product
/// `(x, y)(x', y') = (xx' + xy' + yx', yy')`. Identity `(0, 1)`.
/// A lattice-ordered algebra that is not an f-algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TwistedR2;

pub fn twisted_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (x, y) = (&a[0], &a[1]);
    let (xp, yp) = (&b[0], &b[1]);
    vec![x * xp + x * yp + y * xp, y * yp]
}

impl AlgebraModel for TwistedR2 {
    type Elem = Vec<Q>;

    fn name(&self) -> String {
        "twisted-r2".into()
    }
    fn zero(&self) -> Vec<Q> {
        vec![rational::zero(), rational::zero()]
    }
    fn identity(&self) -> Option<Vec<Q>> {
        Some(vec![rational::zero(), rational::one()])
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_add(a, b)
    }
    fn scale(&self, q: &Q, a: &Vec<Q>) -> Vec<Q> {
        vec_scale(q, a)
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        twisted_mul(a, b)
    }
    fn join(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_join(a, b)
    }
    fn meet(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_meet(a, b)
    }
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Vec<Q> {
        sampling::sample_vector(rng, 2, bound)
    }
    fn describe(&self, a: &Vec<Q>) -> String {
        rational::format_vector(a)
    }
}

/// Functions on `k` grid nodes of `[0, 1]` that are constant on the first
/// `u` nodes (a neighborhood of the left endpoint). An f-subalgebra of
/// `Pointwise(k)` that contains the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocallyConstant {
    pub k: usize,
    pub u: usize,
}

impl LocallyConstant {
    pub fn new(k: usize, u: usize) -> Result<Self> {
        if k == 0 || u == 0 || u > k {
            return Err(Error::Invalid(format!(
                "locally-constant model needs 1 <= neighborhood <= dimension, got {u} and {k}"
            )));
        }
        Ok(LocallyConstant { k, u })
    }

    pub fn ambient(&self) -> Pointwise {
        Pointwise { k: self.k }
    }

    pub fn contains(&self, a: &[Q]) -> bool {
        a.len() == self.k && a[..self.u].iter().all(|q| q == &a[0])
    }
}

impl AlgebraModel for LocallyConstant {
    type Elem = Vec<Q>;

    fn name(&self) -> String {
        format!("locally-constant({}, {})", self.k, self.u)
    }
    fn zero(&self) -> Vec<Q> {
        vec![rational::zero(); self.k]
    }
    fn identity(&self) -> Option<Vec<Q>> {
        Some(vec![rational::one(); self.k])
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_add(a, b)
    }
    fn scale(&self, q: &Q, a: &Vec<Q>) -> Vec<Q> {
        vec_scale(q, a)
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        zip_with(a, b, |x, y| x * y)
    }
    fn join(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_join(a, b)
    }
    fn meet(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_meet(a, b)
    }
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Vec<Q> {
        let c = sampling::sample_rational(rng, bound);
        let mut v = vec![c; self.u];
        v.extend(sampling::sample_vector(rng, self.k - self.u, bound));
        v
    }
    fn describe(&self, a: &Vec<Q>) -> String {
        rational::format_vector(a)
    }
}

/// Arity-1 expressions read as functions on `[0, 1]`, i.e. the
/// sublattice-algebra of `C[0,1]` generated by the identity function and
/// the constant one. Equality is the sampled semi-decision, so this model
/// is for demonstration only.
#[derive(Debug, Clone)]
pub struct PolyDemo {
    pub plan: SamplingPlan,
    pub max_depth: usize,
}

impl Default for PolyDemo {
    fn default() -> Self {
        PolyDemo {
            plan: SamplingPlan::unit_interval(0),
            max_depth: 3,
        }
    }
}

impl AlgebraModel for PolyDemo {
    type Elem = Expr;

    fn name(&self) -> String {
        "poly-demo".into()
    }
    fn zero(&self) -> Expr {
        Expr::zero()
    }
    fn identity(&self) -> Option<Expr> {
        Some(Expr::one())
    }
    fn add(&self, a: &Expr, b: &Expr) -> Expr {
        Expr::add(a.clone(), b.clone())
    }
    fn scale(&self, q: &Q, a: &Expr) -> Expr {
        Expr::scale(q.clone(), a.clone())
    }
    fn mul(&self, a: &Expr, b: &Expr) -> Expr {
        Expr::mul(a.clone(), b.clone())
    }
    fn join(&self, a: &Expr, b: &Expr) -> Expr {
        Expr::join(a.clone(), b.clone())
    }
    fn meet(&self, a: &Expr, b: &Expr) -> Expr {
        Expr::meet(a.clone(), b.clone())
    }
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Expr {
        ExprGen::new(1, self.max_depth).bound(bound).generate(rng)
    }
    fn describe(&self, a: &Expr) -> String {
        a.to_string()
    }
    fn elem_eq(&self, a: &Expr, b: &Expr) -> bool {
        semantic_eq(a, b, 1, &self.plan).is_equal()
    }
}

/// Model descriptor as it appears in configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Pointwise { k: usize },
    TwistedR2,
    LocallyConstant { k: usize, u: usize },
    PolyDemo,
}

impl ModelKind {
    pub fn from_parts(kind: &str, dimension: Option<usize>, neighborhood: Option<usize>) -> Result<Self> {
        match kind {
            "pointwise" => {
                let k = dimension.unwrap_or(3);
                Pointwise::new(k)?;
                Ok(ModelKind::Pointwise { k })
            }
            "twisted-r2" => Ok(ModelKind::TwistedR2),
            "locally-constant" => {
                let k = dimension.unwrap_or(8);
                let u = neighborhood.unwrap_or(3);
                LocallyConstant::new(k, u)?;
                Ok(ModelKind::LocallyConstant { k, u })
            }
            "poly-demo" => Ok(ModelKind::PolyDemo),
            other => Err(Error::Invalid(format!("unknown model kind `{other}`"))),
        }
    }

    /// Finite models only; `None` for the demo model.
    pub fn finite(&self) -> Option<FiniteModel> {
        match *self {
            ModelKind::Pointwise { k } => Some(FiniteModel::Pointwise(Pointwise { k })),
            ModelKind::TwistedR2 => Some(FiniteModel::TwistedR2(TwistedR2)),
            ModelKind::LocallyConstant { k, u } => {
                Some(FiniteModel::LocallyConstant(LocallyConstant { k, u }))
            }
            ModelKind::PolyDemo => None,
        }
    }
}

/// Any of the exact finite models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteModel {
    Pointwise(Pointwise),
    TwistedR2(TwistedR2),
    LocallyConstant(LocallyConstant),
}

macro_rules! delegate {
    ($self:ident, $m:ident => $body:expr) => {
        match $self {
            FiniteModel::Pointwise($m) => $body,
            FiniteModel::TwistedR2($m) => $body,
            FiniteModel::LocallyConstant($m) => $body,
        }
    };
}

impl FiniteModel {
    pub fn dim(&self) -> usize {
        match self {
            FiniteModel::Pointwise(m) => m.k,
            FiniteModel::TwistedR2(_) => 2,
            FiniteModel::LocallyConstant(m) => m.k,
        }
    }

    /// Whether the model is expected to be an f-algebra.
    pub fn is_f_algebra(&self) -> bool {
        !matches!(self, FiniteModel::TwistedR2(_))
    }

    /// Parses a comma separated element and checks it belongs to the carrier.
    pub fn parse_element(&self, text: &str) -> Result<Vec<Q>> {
        let v = rational::parse_vector(text)?;
        self.check_element(&v)?;
        Ok(v)
    }

    pub fn check_element(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        if let FiniteModel::LocallyConstant(m) = self {
            if !m.contains(v) {
                return Err(Error::Invalid(format!(
                    "element {} is not constant on the first {} coordinates",
                    rational::format_vector(v),
                    m.u
                )));
            }
        }
        Ok(())
    }
}

impl AlgebraModel for FiniteModel {
    type Elem = Vec<Q>;

    fn name(&self) -> String {
        delegate!(self, m => m.name())
    }
    fn zero(&self) -> Vec<Q> {
        delegate!(self, m => m.zero())
    }
    fn identity(&self) -> Option<Vec<Q>> {
        delegate!(self, m => m.identity())
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_add(a, b)
    }
    fn scale(&self, q: &Q, a: &Vec<Q>) -> Vec<Q> {
        vec_scale(q, a)
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        delegate!(self, m => m.mul(a, b))
    }
    fn join(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_join(a, b)
    }
    fn meet(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_meet(a, b)
    }
    fn sample(&self, rng: &mut TrialRng, bound: u32) -> Vec<Q> {
        delegate!(self, m => m.sample(rng, bound))
    }
    fn describe(&self, a: &Vec<Q>) -> String {
        rational::format_vector(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomGroup {
    VectorLattice,
    Algebra,
    LatticeOrdered,
    Identity,
    FAlgebra,
}

impl AxiomGroup {
    pub fn label(&self) -> &'static str {
        match self {
            AxiomGroup::VectorLattice => "vector-lattice",
            AxiomGroup::Algebra => "algebra",
            AxiomGroup::LatticeOrdered => "lattice-ordered",
            AxiomGroup::Identity => "identity",
            AxiomGroup::FAlgebra => "f-algebra",
        }
    }
}

/// Inputs drawn for one trial: three elements and two scalars.
#[derive(Debug, Clone)]
pub struct TrialInputs<E> {
    pub x: E,
    pub y: E,
    pub z: E,
    pub lambda: Q,
    pub mu: Q,
}

type AxiomFn<M> = fn(&M, &TrialInputs<<M as AlgebraModel>::Elem>) -> bool;

struct Axiom<M: AlgebraModel> {
    name: &'static str,
    group: AxiomGroup,
    check: AxiomFn<M>,
}

fn axioms<M: AlgebraModel>() -> Vec<Axiom<M>> {
    use AxiomGroup::*;
    let ax = |name, group, check: AxiomFn<M>| Axiom { name, group, check };
    vec![
        ax("add-commutative", VectorLattice, |m, t| {
            m.elem_eq(&m.add(&t.x, &t.y), &m.add(&t.y, &t.x))
        }),
        ax("add-associative", VectorLattice, |m, t| {
            m.elem_eq(
                &m.add(&m.add(&t.x, &t.y), &t.z),
                &m.add(&t.x, &m.add(&t.y, &t.z)),
            )
        }),
        ax("scalar-distributive", VectorLattice, |m, t| {
            m.elem_eq(
                &m.scale(&t.lambda, &m.add(&t.x, &t.y)),
                &m.add(&m.scale(&t.lambda, &t.x), &m.scale(&t.lambda, &t.y)),
            ) && m.elem_eq(
                &m.scale(&(&t.lambda + &t.mu), &t.x),
                &m.add(&m.scale(&t.lambda, &t.x), &m.scale(&t.mu, &t.x)),
            )
        }),
        ax("scalar-associative", VectorLattice, |m, t| {
            m.elem_eq(
                &m.scale(&t.lambda, &m.scale(&t.mu, &t.x)),
                &m.scale(&(&t.lambda * &t.mu), &t.x),
            )
        }),
        ax("join-commutative", VectorLattice, |m, t| {
            m.elem_eq(&m.join(&t.x, &t.y), &m.join(&t.y, &t.x))
        }),
        ax("join-associative", VectorLattice, |m, t| {
            m.elem_eq(
                &m.join(&m.join(&t.x, &t.y), &t.z),
                &m.join(&t.x, &m.join(&t.y, &t.z)),
            )
        }),
        ax("meet-commutative", VectorLattice, |m, t| {
            m.elem_eq(&m.meet(&t.x, &t.y), &m.meet(&t.y, &t.x))
        }),
        ax("meet-associative", VectorLattice, |m, t| {
            m.elem_eq(
                &m.meet(&m.meet(&t.x, &t.y), &t.z),
                &m.meet(&t.x, &m.meet(&t.y, &t.z)),
            )
        }),
        ax("absorption", VectorLattice, |m, t| {
            m.elem_eq(&m.join(&t.x, &m.meet(&t.x, &t.y)), &t.x)
                && m.elem_eq(&m.meet(&t.x, &m.join(&t.x, &t.y)), &t.x)
        }),
        ax("lattice-distributive", VectorLattice, |m, t| {
            m.elem_eq(
                &m.meet(&t.x, &m.join(&t.y, &t.z)),
                &m.join(&m.meet(&t.x, &t.y), &m.meet(&t.x, &t.z)),
            )
        }),
        ax("translation-invariant", VectorLattice, |m, t| {
            m.elem_eq(
                &m.add(&m.join(&t.x, &t.y), &t.z),
                &m.join(&m.add(&t.x, &t.z), &m.add(&t.y, &t.z)),
            )
        }),
        ax("positive-scaling-monotone", VectorLattice, |m, t| {
            let l = t.lambda.abs();
            m.elem_eq(
                &m.scale(&l, &m.join(&t.x, &t.y)),
                &m.join(&m.scale(&l, &t.x), &m.scale(&l, &t.y)),
            )
        }),
        ax("negation-duality", VectorLattice, |m, t| {
            m.elem_eq(&m.neg(&m.join(&t.x, &t.y)), &m.meet(&m.neg(&t.x), &m.neg(&t.y)))
        }),
        ax("join-plus-meet", VectorLattice, |m, t| {
            m.elem_eq(
                &m.add(&m.join(&t.x, &t.y), &m.meet(&t.x, &t.y)),
                &m.add(&t.x, &t.y),
            )
        }),
        ax("order-from-join", VectorLattice, |m, t| {
            let j = m.join(&t.x, &t.y);
            m.leq(&t.x, &j) && m.leq(&t.y, &j) && m.leq(&m.meet(&t.x, &t.y), &t.x)
        }),
        ax("mul-associative", Algebra, |m, t| {
            m.elem_eq(
                &m.mul(&m.mul(&t.x, &t.y), &t.z),
                &m.mul(&t.x, &m.mul(&t.y, &t.z)),
            )
        }),
        ax("mul-commutative", Algebra, |m, t| {
            m.elem_eq(&m.mul(&t.x, &t.y), &m.mul(&t.y, &t.x))
        }),
        ax("left-distributive", Algebra, |m, t| {
            m.elem_eq(
                &m.mul(&t.x, &m.add(&t.y, &t.z)),
                &m.add(&m.mul(&t.x, &t.y), &m.mul(&t.x, &t.z)),
            )
        }),
        ax("right-distributive", Algebra, |m, t| {
            m.elem_eq(
                &m.mul(&m.add(&t.x, &t.y), &t.z),
                &m.add(&m.mul(&t.x, &t.z), &m.mul(&t.y, &t.z)),
            )
        }),
        ax("scalar-mul-compatible", Algebra, |m, t| {
            m.elem_eq(
                &m.mul(&m.scale(&t.lambda, &t.x), &m.scale(&t.mu, &t.y)),
                &m.scale(&(&t.lambda * &t.mu), &m.mul(&t.x, &t.y)),
            )
        }),
        ax("positive-products", LatticeOrdered, |m, t| {
            let p = m.mul(&m.pos(&t.x), &m.pos(&t.y));
            m.leq(&m.zero(), &p)
        }),
        ax("identity-neutral", Identity, |m, t| match m.identity() {
            Some(one) => {
                m.elem_eq(&m.mul(&one, &t.x), &t.x)
                    && m.elem_eq(&m.mul(&t.x, &one), &t.x)
                    && m.leq(&m.zero(), &one)
            }
            None => true,
        }),
        ax("birkhoff-left", FAlgebra, |m, t| {
            let lhs = m.meet(&m.pos(&t.x), &m.mul(&m.neg_part(&t.x), &m.pos(&t.y)));
            m.is_zero(&lhs)
        }),
        ax("birkhoff-right", FAlgebra, |m, t| {
            let lhs = m.meet(&m.pos(&t.x), &m.mul(&m.pos(&t.y), &m.neg_part(&t.x)));
            m.is_zero(&lhs)
        }),
        ax("disjoint-multiplication", FAlgebra, |m, t| {
            // u⁺ and u⁻ are disjoint positives
            let u = m.sub(&t.x, &t.y);
            let (a, b) = (m.pos(&u), m.neg_part(&u));
            let z = m.pos(&t.z);
            m.is_zero(&m.meet(&m.mul(&z, &a), &b)) && m.is_zero(&m.meet(&m.mul(&a, &z), &b))
        }),
        ax("disjoint-product", FAlgebra, |m, t| {
            let u = m.sub(&t.x, &t.y);
            m.is_zero(&m.mul(&m.pos(&u), &m.neg_part(&u)))
        }),
    ]
}

/// Per-axiom verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Held,
    /// First failing trial with its inputs (described by the model).
    Counterexample { trial: usize, inputs: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub group: AxiomGroup,
    pub outcome: AxiomOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub model: String,
    pub trials: usize,
    pub seed: u64,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    fn groups_hold(&self, pred: impl Fn(AxiomGroup) -> bool) -> bool {
        self.results
            .iter()
            .filter(|r| pred(r.group))
            .all(|r| r.outcome == AxiomOutcome::Held)
    }

    /// Vector lattice, algebra, positivity and identity axioms.
    pub fn lattice_ordered_algebra_holds(&self) -> bool {
        self.groups_hold(|g| g != AxiomGroup::FAlgebra)
    }

    pub fn f_algebra_holds(&self) -> bool {
        self.groups_hold(|g| g == AxiomGroup::FAlgebra)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

pub fn draw_inputs<M: AlgebraModel>(m: &M, seed: u64, trial: usize, bound: u32) -> TrialInputs<M::Elem> {
    let mut rng = rng_for(seed, trial as u64);
    TrialInputs {
        x: m.sample(&mut rng, bound),
        y: m.sample(&mut rng, bound),
        z: m.sample(&mut rng, bound),
        lambda: sampling::sample_rational(&mut rng, bound),
        mu: sampling::sample_rational(&mut rng, bound),
    }
}

/// Checks every axiom on `trials` random input tuples. Trials run in
/// parallel; the report only depends on `(model, trials, seed, bound)`.
pub fn axiom_suite<M: AlgebraModel>(m: &M, trials: usize, seed: u64, bound: u32) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let table = axioms::<M>();
    let verdicts: Vec<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let inputs = draw_inputs(m, seed, i, bound);
            table.iter().map(|a| (a.check)(m, &inputs)).collect()
        })
        .collect();
    let results = table
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let outcome = match verdicts.iter().position(|v| !v[j]) {
                None => AxiomOutcome::Held,
                Some(trial) => {
                    let t = draw_inputs(m, seed, trial, bound);
                    let mut inputs = vec![
                        format!("x={}", m.describe(&t.x)),
                        format!("y={}", m.describe(&t.y)),
                        format!("z={}", m.describe(&t.z)),
                    ];
                    inputs.push(format!("lambda={}", t.lambda));
                    inputs.push(format!("mu={}", t.mu));
                    AxiomOutcome::Counterexample { trial, inputs }
                }
            };
            AxiomResult {
                name: a.name,
                group: a.group,
                outcome,
            }
        })
        .collect();
    Ok(AxiomReport {
        model: m.name(),
        trials,
        seed,
        results,
    })
}

pub type Sampler<'a> = Box<dyn Fn(&mut TrialRng) -> Vec<Q> + Sync + 'a>;
pub type Membership<'a> = Box<dyn Fn(&[Q]) -> bool + Sync + 'a>;

/// A subset of a pointwise model described by generators, an optional
/// sampler of further members, and a membership predicate.
pub struct Subset<'a> {
    pub name: String,
    pub generators: Vec<Vec<Q>>,
    pub sampler: Option<Sampler<'a>>,
    pub contains: Membership<'a>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub operation: &'static str,
    pub left: Vec<Q>,
    pub right: Vec<Q>,
    pub result: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraReport {
    pub closed: bool,
    pub contains_identity: bool,
    pub violation: Option<ClosureViolation>,
}

/// Checks closure of sampled members of `s` under the five operations of
/// `Pointwise(k)`. Closed sublattice-subalgebras of an f-algebra are
/// f-subalgebras, so closure is the whole test.
pub fn is_f_subalgebra(m: &Pointwise, s: &Subset<'_>, trials: usize, seed: u64) -> Result<SubalgebraReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    if s.generators.is_empty() && s.sampler.is_none() {
        return Err(Error::Invalid("subset needs generators or a sampler".into()));
    }
    let draw = |rng: &mut TrialRng| -> Vec<Q> {
        use rand::Rng;
        let use_gen = !s.generators.is_empty() && (s.sampler.is_none() || rng.random_bool(0.5));
        if use_gen {
            s.generators[rng.random_range(0..s.generators.len())].clone()
        } else {
            (s.sampler.as_ref().expect("checked"))(rng)
        }
    };
    for trial in 0..trials {
        let mut rng = rng_for(seed, trial as u64);
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let q = sampling::sample_rational(&mut rng, 8);
        let candidates: [(&'static str, Vec<Q>); 5] = [
            ("add", m.add(&a, &b)),
            ("scale", m.scale(&q, &a)),
            ("mul", m.mul(&a, &b)),
            ("join", m.join(&a, &b)),
            ("meet", m.meet(&a, &b)),
        ];
        for (operation, result) in candidates {
            if !(s.contains)(&result) {
                let right = if operation == "scale" { vec![q.clone()] } else { b.clone() };
                return Ok(SubalgebraReport {
                    closed: false,
                    contains_identity: m.identity().is_some_and(|one| (s.contains)(&one)),
                    violation: Some(ClosureViolation {
                        operation,
                        left: a,
                        right,
                        result,
                    }),
                });
            }
        }
    }
    Ok(SubalgebraReport {
        closed: true,
        contains_identity: m.identity().is_some_and(|one| (s.contains)(&one)),
        violation: None,
    })
}

/// True when every entry is nonnegative.
pub fn is_positive(v: &[Q]) -> bool {
    v.iter().all(|q| !q.is_negative())
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
