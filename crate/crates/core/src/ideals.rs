//! Order ideals and their norms on pointwise models.
//!
//! For `e >= 0` the ideal `I_e` is `{x : |x| <= λe for some λ}` and
//! `‖x‖_e = inf{λ >= 0 : |x| <= λe}`. On `Q^k` the infimum is attained and
//! equals the largest ratio `|x_j| / e_j`.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::sampling::{self, rng_for};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealNorm {
    Value(Q),
    /// `x_j ≠ 0` where `e_j = 0`; `coordinate` is 1-based.
    NotInIdeal { coordinate: usize },
}

impl IdealNorm {
    pub fn value(&self) -> Option<&Q> {
        match self {
            IdealNorm::Value(q) => Some(q),
            IdealNorm::NotInIdeal { .. } => None,
        }
    }
}

fn check_dims(x: &[Q], e: &[Q]) -> Result<()> {
    if x.len() != e.len() {
        return Err(Error::DimensionMismatch {
            expected: e.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

fn check_positive(e: &[Q]) -> Result<()> {
    if let Some(j) = e.iter().position(Signed::is_negative) {
        return Err(Error::Invalid(format!(
            "generator must be positive; coordinate {} is {}",
            j + 1,
            e[j]
        )));
    }
    Ok(())
}

/// `‖x‖_e` on `Q^k`. Coordinates with `x_j = e_j = 0` contribute nothing.
pub fn f_norm(x: &[Q], e: &[Q]) -> Result<IdealNorm> {
    check_dims(x, e)?;
    check_positive(e)?;
    let mut best = rational::zero();
    for (j, (xj, ej)) in x.iter().zip(e).enumerate() {
        if ej.is_zero() {
            if !xj.is_zero() {
                return Ok(IdealNorm::NotInIdeal { coordinate: j + 1 });
            }
            continue;
        }
        let r = xj.abs() / ej;
        if r > best {
            best = r;
        }
    }
    Ok(IdealNorm::Value(best))
}

/// `|x| <= λ e` coordinatewise.
pub fn dominated(x: &[Q], lambda: &Q, e: &[Q]) -> bool {
    x.iter().zip(e).all(|(xj, ej)| xj.abs() <= lambda * ej)
}

pub fn power(e: &[Q], m: u32) -> Vec<Q> {
    e.iter().map(|q| rational::pow(q, m)).collect()
}

/// Smallest `m` in `1..=m_max` with `x ∈ I_{e^m}`, and the norm there.
pub fn ia_degree(x: &[Q], e: &[Q], m_max: u32) -> Result<Option<(u32, Q)>> {
    check_dims(x, e)?;
    check_positive(e)?;
    for m in 1..=m_max {
        if let IdealNorm::Value(l) = f_norm(x, &power(e, m))? {
            return Ok(Some((m, l)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationViolation {
    /// `(e^m)_j > (e^{m+1})_j`.
    PowersDecrease { m: u32, coordinate: usize },
    /// A sampled `x` whose norm grew from level `m` to `m + 1`.
    NormIncrease { m: u32, x: Vec<Q>, at_m: Q, at_next: Q },
    /// A sampled `x ∈ I_{e^m}` that left the ideal at level `m + 1`.
    LeftIdeal { m: u32, x: Vec<Q> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub checked: usize,
    pub violation: Option<FiltrationViolation>,
}

/// For `e >= 1` the ideals `I_{e^m}` increase with `m` and the norms
/// decrease. Checks `e^m <= e^{m+1}` for `m = 1..=m_max` and the norm
/// monotonicity on `trials` sampled `x`.
pub fn filtration_check(e: &[Q], m_max: u32, trials: usize, seed: u64, bound: u32) -> Result<FiltrationReport> {
    check_positive(e)?;
    for m in 1..=m_max {
        let (lo, hi) = (power(e, m), power(e, m + 1));
        if let Some(j) = lo.iter().zip(&hi).position(|(a, b)| a > b) {
            return Ok(FiltrationReport {
                checked: 0,
                violation: Some(FiltrationViolation::PowersDecrease { m, coordinate: j + 1 }),
            });
        }
    }
    let powers: Vec<Vec<Q>> = (1..=m_max + 1).map(|m| power(e, m)).collect();
    let found: Vec<Option<FiltrationViolation>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let x = sampling::sample_vector(&mut rng_for(seed, trial as u64), e.len(), bound);
            for m in 1..=m_max {
                let i = (m - 1) as usize;
                let Ok(IdealNorm::Value(at_m)) = f_norm(&x, &powers[i]) else {
                    continue;
                };
                match f_norm(&x, &powers[i + 1]) {
                    Ok(IdealNorm::Value(at_next)) if at_next > at_m => {
                        return Some(FiltrationViolation::NormIncrease { m, x, at_m, at_next })
                    }
                    Ok(IdealNorm::NotInIdeal { .. }) => {
                        return Some(FiltrationViolation::LeftIdeal { m, x })
                    }
                    _ => {}
                }
            }
            None
        })
        .collect();
    Ok(FiltrationReport {
        checked: trials,
        violation: found.into_iter().flatten().next(),
    })
}

/// `T(x)_j = w_j · x_{s(j)}` with `s(j)` a 1-based source index and
/// `w_j > 0`. Every such map is a lattice homomorphism `Q^k -> Q^l`; with
/// unit weights it is also multiplicative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHom {
    pub source_dim: usize,
    pub map: Vec<usize>,
    pub weights: Option<Vec<Q>>,
}

impl LatticeHom {
    pub fn new(source_dim: usize, map: Vec<usize>, weights: Option<Vec<Q>>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::Invalid("lattice homomorphism needs a target coordinate".into()));
        }
        if let Some(&bad) = map.iter().find(|&&s| s == 0 || s > source_dim) {
            return Err(Error::Invalid(format!(
                "source index {bad} outside 1..={source_dim}"
            )));
        }
        if let Some(w) = &weights {
            if w.len() != map.len() || w.iter().any(|q| !q.is_positive()) {
                return Err(Error::Invalid("weights must be positive, one per target".into()));
            }
        }
        Ok(LatticeHom {
            source_dim,
            map,
            weights,
        })
    }

    pub fn identity(k: usize) -> Self {
        LatticeHom {
            source_dim: k,
            map: (1..=k).collect(),
            weights: None,
        }
    }

    /// Keeps the listed source coordinates.
    pub fn projection(source_dim: usize, keep: &[usize]) -> Result<Self> {
        LatticeHom::new(source_dim, keep.to_vec(), None)
    }

    pub fn target_dim(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: &[Q]) -> Result<Vec<Q>> {
        check_dims(x, &vec![Q::zero(); self.source_dim])?;
        Ok(self
            .map
            .iter()
            .enumerate()
            .map(|(j, &s)| match &self.weights {
                Some(w) => &w[j] * &x[s - 1],
                None => x[s - 1].clone(),
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractivityViolation {
    /// `Tx ∉ I_{Te}` although `x ∈ I_e`.
    LeftIdeal { sample: usize },
    NormGrew { sample: usize, source: Q, image: Q },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractivityReport {
    pub checked: usize,
    /// Samples outside `I_e`, which the check does not apply to.
    pub skipped: usize,
    pub violation: Option<ContractivityViolation>,
    /// Per checked sample: `(‖x‖_e, ‖Tx‖_{Te})`.
    pub norms: Vec<(Q, Q)>,
}

/// Checks that `T` maps `I_e` into `I_{Te}` with `‖Tx‖_{Te} <= ‖x‖_e`.
pub fn hom_contractivity_check(t: &LatticeHom, e: &[Q], xs: &[Vec<Q>]) -> Result<ContractivityReport> {
    check_positive(e)?;
    let te = t.apply(e)?;
    let mut report = ContractivityReport {
        checked: 0,
        skipped: 0,
        violation: None,
        norms: Vec::new(),
    };
    for (i, x) in xs.iter().enumerate() {
        let IdealNorm::Value(source) = f_norm(x, e)? else {
            report.skipped += 1;
            continue;
        };
        report.checked += 1;
        match f_norm(&t.apply(x)?, &te)? {
            IdealNorm::NotInIdeal { .. } => {
                report.violation.get_or_insert(ContractivityViolation::LeftIdeal { sample: i });
            }
            IdealNorm::Value(image) => {
                if image > source {
                    report.violation.get_or_insert(ContractivityViolation::NormGrew {
                        sample: i,
                        source: source.clone(),
                        image: image.clone(),
                    });
                }
                report.norms.push((source, image));
            }
        }
    }
    Ok(report)
}

/// Exact norm-axiom checks for one `(x, y, e, q, ε)` sample; returns the
/// name of the first failing property.
pub fn norm_axioms(x: &[Q], y: &[Q], e: &[Q], q: &Q, eps: &Q) -> Result<Option<&'static str>> {
    let nx = f_norm(x, e)?;
    let ny = f_norm(y, e)?;
    let (Some(nx), Some(ny)) = (nx.value(), ny.value()) else {
        return Ok(None);
    };
    let sum: Vec<Q> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let scaled: Vec<Q> = x.iter().map(|a| q * a).collect();
    let n_sum = f_norm(&sum, e)?;
    let n_scaled = f_norm(&scaled, e)?;
    if n_sum.value().is_none_or(|s| s > &(nx + ny)) {
        return Ok(Some("triangle"));
    }
    if n_scaled.value() != Some(&(q.abs() * nx)) {
        return Ok(Some("homogeneity"));
    }
    let strictly_positive = e.iter().all(Signed::is_positive);
    if strictly_positive && (nx.is_zero() != x.iter().all(Zero::is_zero)) {
        return Ok(Some("definiteness"));
    }
    // Riesz: |a| <= |b| implies ‖a‖ <= ‖b‖; use a = x ∧ |y| clipped into [-|y|, |y|]
    let clipped: Vec<Q> = x
        .iter()
        .zip(y)
        .map(|(a, b)| rational::max(&rational::min(a, &b.abs()), &-b.abs()))
        .collect();
    if f_norm(&clipped, e)?.value().is_none_or(|c| c > ny) {
        return Ok(Some("riesz"));
    }
    if !dominated(x, nx, e) {
        return Ok(Some("attained"));
    }
    if eps.is_positive() && !nx.is_zero() && dominated(x, &(nx - eps), e) {
        return Ok(Some("infimum"));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn f_norm_examples() {
        assert_eq!(f_norm(&v(&[1, 1, 1]), &v(&[1, 2, 4])).unwrap(), IdealNorm::Value(int(1)));
        assert_eq!(f_norm(&v(&[0, 0, 0]), &v(&[3, 0, 1])).unwrap(), IdealNorm::Value(int(0)));
        assert_eq!(
            f_norm(&v(&[0, 0, 1]), &v(&[1, 1, 0])).unwrap(),
            IdealNorm::NotInIdeal { coordinate: 3 }
        );
        assert!(f_norm(&v(&[1]), &v(&[-1])).is_err());
        assert!(f_norm(&v(&[1, 2]), &v(&[1])).is_err());
    }

    #[test]
    fn ia_degree_examples() {
        assert_eq!(ia_degree(&v(&[1, 8]), &v(&[1, 2]), 5).unwrap(), Some((1, int(4))));
        assert_eq!(ia_degree(&v(&[0, 1]), &v(&[1, 0]), 5).unwrap(), None);
        assert_eq!(ia_degree(&v(&[1, 1]), &v(&[2, 2]), 5).unwrap(), Some((1, ratio(1, 2))));
        assert_eq!(ia_degree(&v(&[1, 9]), &v(&[1, 3]), 5).unwrap(), Some((1, int(3))));
        assert_eq!(f_norm(&v(&[1, 9]), &power(&v(&[1, 3]), 2)).unwrap(), IdealNorm::Value(int(1)));
    }

    #[test]
    fn filtration_examples() {
        let r = filtration_check(&v(&[1, 2, 3]), 4, 200, 1, 8).unwrap();
        assert_eq!(r.violation, None);
        let r = filtration_check(&[ratio(1, 2), int(2)], 3, 10, 1, 8).unwrap();
        assert_eq!(
            r.violation,
            Some(FiltrationViolation::PowersDecrease { m: 1, coordinate: 1 })
        );
    }

    #[test]
    fn identity_generator_gives_constant_norms() {
        let one = v(&[1, 1, 1]);
        let x = vec![ratio(-3, 2), int(2), ratio(1, 7)];
        let norms: Vec<_> = (1..5).map(|m| f_norm(&x, &power(&one, m)).unwrap()).collect();
        assert!(norms.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn contractivity_examples() {
        let proj = LatticeHom::projection(3, &[1, 2]).unwrap();
        let r = hom_contractivity_check(&proj, &v(&[1, 2, 4]), &[v(&[1, 1, 1])]).unwrap();
        assert_eq!(r.norms, vec![(int(1), int(1))]);
        assert_eq!(r.violation, None);

        let id = LatticeHom::identity(3);
        let r = hom_contractivity_check(&id, &v(&[1, 2, 4]), &[v(&[3, -1, 2])]).unwrap();
        assert!(r.norms.iter().all(|(a, b)| a == b));

        let dup = LatticeHom::new(1, vec![1, 1], None).unwrap();
        let r = hom_contractivity_check(&dup, &v(&[2]), &[v(&[-5])]).unwrap();
        assert_eq!(r.norms, vec![(ratio(5, 2), ratio(5, 2))]);

        let r = hom_contractivity_check(&id, &v(&[1, 0, 1]), &[v(&[0, 1, 0])]).unwrap();
        assert_eq!((r.checked, r.skipped), (0, 1));
    }

    #[test]
    fn hom_validation() {
        assert!(LatticeHom::new(2, vec![3], None).is_err());
        assert!(LatticeHom::new(2, vec![1], Some(vec![int(0)])).is_err());
        assert!(LatticeHom::new(2, vec![], None).is_err());
    }

    #[test]
    fn norm_axioms_hold_on_an_example() {
        let e = vec![int(1), int(2), ratio(1, 3)];
        let r = norm_axioms(&v(&[1, -2, 3]), &v(&[0, 5, -1]), &e, &ratio(-3, 2), &ratio(1, 100));
        assert_eq!(r.unwrap(), None);
    }
}
