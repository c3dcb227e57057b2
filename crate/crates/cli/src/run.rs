//! Single operations.

use std::time::Instant;

use latcalc_core::calculus::{
    self, apply_calculus, birkhoff_check, birkhoff_grid_search, compo_check, reconstruction_suite,
    CalculusInstance, PointwiseRaw,
};
use latcalc_core::growth::{self, box_sup_bound, dm_norm_lower, growth_certificate, ideal_degree_upper};
use latcalc_core::homog::{self, h_part, numeric_h_check, HPart};
use latcalc_core::ideals::{
    f_norm, hom_contractivity_check, ia_degree, ContractivityViolation, IdealNorm, LatticeHom,
};
use latcalc_core::interval::IntervalBox;
use latcalc_core::models::{AlgebraModel, FiniteModel, ModelKind};
use latcalc_core::rational::{self, format_vector};
use latcalc_core::sampling::{self, rng_for};
use latcalc_core::{eval_point, Expr, Point, Q};

use crate::config::{ConfigError, Op, RunConfig};
use crate::report::{Record, Report, Verdict};
use crate::{suite, RunError};

/// Runs the configured operation.
pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let start = Instant::now();
    let records = match cfg.op {
        Op::Suite => suite::run_suite(cfg)?,
        op => vec![run_single(op, cfg)?],
    };
    Ok(Report {
        operation: cfg.op.name().to_string(),
        inputs: cfg.echo(),
        records,
        seed: cfg.seed,
        elapsed: start.elapsed(),
    })
}

fn missing(field: &str, why: &str) -> RunError {
    RunError::Config(ConfigError {
        field: field.to_string(),
        message: why.to_string(),
    })
}

fn expr(cfg: &RunConfig) -> Result<(&Expr, usize), RunError> {
    cfg.expr
        .as_ref()
        .map(|(e, n)| (e, *n))
        .ok_or_else(|| missing("expr", "an expression is required"))
}

fn finite_model(cfg: &RunConfig) -> Result<FiniteModel, RunError> {
    let kind = cfg.model.ok_or_else(|| missing("model", "a model is required"))?;
    kind.finite()
        .ok_or_else(|| missing("model.kind", "this operation needs a finite model"))
}

fn vector_field<'a>(v: &'a Option<Vec<Q>>, field: &str) -> Result<&'a [Q], RunError> {
    v.as_deref()
        .ok_or_else(|| missing(field, "a vector is required"))
}

fn single_x(cfg: &RunConfig) -> Result<&[Q], RunError> {
    match cfg.xs.as_slice() {
        [x] => Ok(x),
        _ => Err(missing("x", "exactly one element is required")),
    }
}

fn check_model_dim(cfg: &RunConfig, vs: &[&[Q]]) -> Result<(), RunError> {
    if let Some(m) = cfg.model.and_then(|m| m.finite()) {
        for v in vs {
            m.check_element(v)?;
        }
    }
    Ok(())
}

/// Random directions in `[-1, 1]^n` on the grid of spacing `1/8`.
pub fn default_directions(n: usize, count: usize, seed: u64) -> Vec<Point> {
    let (lo, hi) = (rational::int(-1), rational::int(1));
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            (0..n).map(|_| sampling::sample_in(&mut rng, &lo, &hi, 16)).collect()
        })
        .collect()
}

pub fn hcheck_tolerance() -> Q {
    rational::dyadic(10)
}

fn run_single(op: Op, cfg: &RunConfig) -> Result<Record, RunError> {
    let name = op.name();
    let rec = match op {
        Op::Parse => {
            let (e, n) = expr(cfg)?;
            Record::new(name, Verdict::Value(e.to_string()), format!("arity {n}; tree {e:?}"))
        }
        Op::Eval => {
            let (e, n) = expr(cfg)?;
            let t = vector_field(&cfg.point, "point")?;
            let arity = n.max(t.len());
            let v = eval_point(e, t, arity)?;
            Record::new(name, Verdict::Value(v.to_string()), format!("at {}", format_vector(t)))
        }
        Op::Cert => {
            let (e, n) = expr(cfg)?;
            let c = growth_certificate(e);
            let w = ideal_degree_upper(e, n);
            Record::new(
                name,
                Verdict::Value(format!("({}, {})", c.bound, c.degree)),
                format!("|f| <= {} * d^{}", w.constant, w.m),
            )
        }
        Op::Sup => {
            let (e, n) = expr(cfg)?;
            let region = cfg.region.clone().unwrap_or_else(|| IntervalBox::unit_cube(n));
            let tol = cfg.tol.clone().unwrap_or_else(|| rational::ratio(1, 1000));
            let s = box_sup_bound(e, &region, &tol, cfg.budget)?;
            let mut w = format!("argmax {}; nodes {}", format_vector(&s.argmax), s.nodes);
            if s.budget_exhausted {
                w.push_str("; budget-exhausted");
            }
            Record::new(name, Verdict::Value(format!("[{}, {}]", s.lower, s.upper)), w)
        }
        Op::Dmnorm => {
            let (e, n) = expr(cfg)?;
            let w = ideal_degree_upper(e, n);
            let m = cfg.m.unwrap_or(w.m);
            let (lower, at) = dm_norm_lower(e, m, &growth::default_sweep(n));
            let upper = if m >= w.m {
                format!("upper {}", w.constant)
            } else {
                format!("no certified upper bound below m = {}", w.m)
            };
            let at = at.map(|p| format_vector(&p)).unwrap_or_default();
            Record::new(name, Verdict::Value(lower.to_string()), format!("m {m}; at {at}; {upper}"))
        }
        Op::Hpart => {
            let (e, _) = expr(cfg)?;
            match h_part(e) {
                HPart::Member(fh) => Record::new(name, Verdict::Value(fh.to_string()), ""),
                HPart::NotMember { value_at_origin } => Record::new(
                    name,
                    Verdict::Value("none".into()),
                    format!("f(0) = {value_at_origin}"),
                ),
            }
        }
        Op::Hcheck => {
            let (e, n) = expr(cfg)?;
            let dirs = match &cfg.dirs {
                Some(d) => {
                    if d[0].len() < n {
                        return Err(missing("dirs", "directions shorter than the expression arity"));
                    }
                    d.clone()
                }
                None => default_directions(n, 20, cfg.seed),
            };
            let tol = cfg.tol.clone().unwrap_or_else(hcheck_tolerance);
            let r = numeric_h_check(e, &dirs, &homog::default_t_sequence(), &tol)?;
            let (t, last) = r.residuals.last().cloned().unwrap_or_default();
            let mut w = format!("residual {last} at t = {t}");
            if let Some((k, x)) = &r.first_increase {
                w.push_str(&format!(
                    "; increase at t = {} along {}",
                    r.residuals[*k].0,
                    format_vector(x)
                ));
            }
            Record::new(name, Verdict::from_bool(r.passed), w)
        }
        Op::Fnorm => {
            let x = single_x(cfg)?;
            let e = vector_field(&cfg.e, "e")?;
            check_model_dim(cfg, &[x, e])?;
            match f_norm(x, e)? {
                IdealNorm::Value(v) => Record::new(name, Verdict::Value(v.to_string()), ""),
                IdealNorm::NotInIdeal { coordinate } => Record::new(
                    name,
                    Verdict::Value("not-in-ideal".into()),
                    format!("coordinate {coordinate}"),
                ),
            }
        }
        Op::Iadeg => {
            let x = single_x(cfg)?;
            let e = vector_field(&cfg.e, "e")?;
            check_model_dim(cfg, &[x, e])?;
            match ia_degree(x, e, cfg.m_max)? {
                Some((m, lambda)) => Record::new(
                    name,
                    Verdict::Value(m.to_string()),
                    format!("|x| <= {lambda} * e^{m}"),
                ),
                None => Record::new(
                    name,
                    Verdict::Value("none".into()),
                    format!("not dominated by a multiple of e^m for m <= {}", cfg.m_max),
                ),
            }
        }
        Op::Contract => {
            let e = vector_field(&cfg.e, "e")?;
            let map = cfg.map.clone().ok_or_else(|| missing("map", "source indices are required"))?;
            let t = LatticeHom::new(e.len(), map, cfg.weights.clone())?;
            let xs: Vec<Vec<Q>> = if cfg.xs.is_empty() {
                (0..cfg.trials)
                    .map(|i| sampling::sample_vector(&mut rng_for(cfg.seed, i as u64), e.len(), 8))
                    .collect()
            } else {
                cfg.xs.clone()
            };
            let r = hom_contractivity_check(&t, e, &xs)?;
            let w = match &r.violation {
                None => format!("{} checked, {} outside the ideal", r.checked, r.skipped),
                Some(ContractivityViolation::LeftIdeal { sample }) => {
                    format!("image of x = {} left the ideal", format_vector(&xs[*sample]))
                }
                Some(ContractivityViolation::NormGrew { sample, source, image }) => format!(
                    "x = {}: norm {source} grew to {image}",
                    format_vector(&xs[*sample])
                ),
            };
            Record::new(name, Verdict::from_bool(r.violation.is_none()), w)
        }
        Op::Apply => {
            let (e, _) = expr(cfg)?;
            let m = finite_model(cfg)?;
            let inst = CalculusInstance::new(&m, cfg.xs.clone())?;
            let v = apply_calculus(e, &inst)?;
            Record::new(name, Verdict::Value(format_vector(&v)), "")
        }
        Op::Compo => {
            let m = finite_model(cfg)?;
            let g = cfg.g.as_ref().ok_or_else(|| missing("g", "an outer expression is required"))?;
            if cfg.fs.is_empty() {
                return Err(missing("f", "inner expressions are required"));
            }
            let inst = CalculusInstance::new(&m, cfg.xs.clone())?;
            let r = compo_check(g, &cfg.fs, &inst)?;
            let mut w = format!("lhs {}; rhs {}", format_vector(&r.lhs), format_vector(&r.rhs));
            if let Some(j) = calculus::witness_coordinate(&r.lhs, &r.rhs) {
                w.push_str(&format!("; differ at coordinate {j}"));
            }
            Record::new(name, Verdict::from_bool(r.equal), w)
        }
        Op::Birkhoff => birkhoff_op(cfg)?,
        Op::Reconstruct => {
            let k = match cfg.model {
                Some(ModelKind::Pointwise { k }) => k,
                _ => return Err(missing("model.kind", "reconstruction runs over a pointwise model")),
            };
            let r = reconstruction_suite(&PointwiseRaw { k }, cfg.trials, cfg.seed, &[])?;
            let w = match r.failures.first() {
                None => format!("{} identities over {} trials", r.identities.len(), r.trials),
                Some(f) => format!(
                    "{} failed at trial {} on {}",
                    f.identity,
                    f.trial,
                    f.inputs.iter().map(|v| format_vector(v)).collect::<Vec<_>>().join(", ")
                ),
            };
            Record::new(name, Verdict::from_bool(r.passed()), w)
        }
        Op::Suite => unreachable!("handled by run"),
    };
    Ok(rec)
}

fn birkhoff_op(cfg: &RunConfig) -> Result<Record, RunError> {
    let m = finite_model(cfg)?;
    if let Some(r) = cfg.search {
        let side = (2 * r + 1) as usize;
        if side.pow(m.dim() as u32) > 20_000 {
            return Err(missing("search", "grid too large for this model dimension"));
        }
        let g = birkhoff_grid_search(&m, m.dim(), r);
        let w = match &g.first {
            None => format!("{} pairs, no violation", g.pairs_examined),
            Some((x1, x2, rep)) => format!(
                "x1={} x2={} left={} right={}; {} of {} pairs violate",
                format_vector(x1),
                format_vector(x2),
                format_vector(&rep.left),
                format_vector(&rep.right),
                g.violations,
                g.pairs_examined
            ),
        };
        return Ok(Record::new("birkhoff", Verdict::from_bool(g.first.is_none()), w));
    }
    let pairs: Vec<(Vec<Q>, Vec<Q>)> = match cfg.xs.as_slice() {
        [x1, x2] => vec![(x1.clone(), x2.clone())],
        [] => (0..cfg.trials)
            .map(|i| {
                let mut rng = rng_for(cfg.seed, i as u64);
                (m.sample(&mut rng, 8), m.sample(&mut rng, 8))
            })
            .collect(),
        _ => return Err(missing("x", "give two elements or none")),
    };
    for (x1, x2) in &pairs {
        let rep = birkhoff_check(&m, x1, x2);
        if !rep.passed {
            return Ok(Record::new(
                "birkhoff",
                Verdict::Fail,
                format!(
                    "x1={} x2={} left={} right={}",
                    format_vector(x1),
                    format_vector(x2),
                    format_vector(&rep.left),
                    format_vector(&rep.right)
                ),
            ));
        }
    }
    Ok(Record::new("birkhoff", Verdict::Pass, format!("{} pairs", pairs.len())))
}
