//! Point counting over prime fields: exhaustive enumeration, Monte Carlo
//! estimation, and dimension estimates from the growth of counts in `q`.
//!
//! Counts are evidence about characteristic-zero statements, not proofs, and
//! every report says so in its `label`.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::jetideal::{
    fiber_ideal_over_point, jet_ideal_generators_over, DeterminantalSpec, RankPoint,
};
use crate::poly::{CoefficientField, JetVariable, Polynomial};

pub const EVIDENCE: &str = "EVIDENCE";
pub const DEFAULT_CAP: u128 = 1 << 28;
pub const DEFAULT_PRIMES: [u64; 2] = [2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountConfig {
    /// Maximum number of assignments an exhaustive count may visit.
    pub cap: u128,
    pub workers: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { cap: DEFAULT_CAP, workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountMode {
    Exact,
    MonteCarlo { samples: u64, confidence: f64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CountValue {
    Exact { exact: u128 },
    Estimate { estimate: f64, half_width: f64, hits: u64 },
}

impl CountValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            CountValue::Exact { exact } => *exact as f64,
            CountValue::Estimate { estimate, .. } => *estimate,
        }
    }

    pub fn exact(&self) -> Option<u128> {
        match self {
            CountValue::Exact { exact } => Some(*exact),
            CountValue::Estimate { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCountReport {
    pub q: u64,
    pub num_vars: usize,
    pub mode: CountMode,
    pub count: CountValue,
    pub workers: usize,
    pub label: &'static str,
}

/// Sparse terms `(coefficient, [(slot, exponent)])`.
type CompiledPoly = Vec<(u64, Vec<(usize, u32)>)>;

/// Generators compiled to integer arithmetic mod `q` over variable slots.
struct CompiledSystem {
    q: u64,
    polys: Vec<CompiledPoly>,
    /// A generator is a nonzero constant: nothing vanishes.
    unit: bool,
}

impl CompiledSystem {
    fn new(gens: &[Polynomial], vars: &[JetVariable], q: u64) -> Result<Self> {
        let field = CoefficientField::prime(q)?;
        let slots: HashMap<JetVariable, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut polys = Vec::with_capacity(gens.len());
        let mut unit = false;
        for g in gens {
            let g = match g.field() {
                CoefficientField::Rationals => g.to_field(field)?,
                f if f == field => g.clone(),
                other => return Err(Error::FieldMismatch(other, field)),
            };
            if g.is_zero() {
                continue;
            }
            if g.constant_value().is_some() {
                unit = true;
            }
            let mut terms = Vec::with_capacity(g.num_terms());
            for (mono, c) in g.terms() {
                let factors = mono
                    .factors()
                    .iter()
                    .map(|&(v, e)| slots.get(&v).map(|&s| (s, e)).ok_or(Error::UnboundVariable(v)))
                    .collect::<Result<Vec<_>>>()?;
                let c = c.to_integer().to_u64().expect("canonical representative");
                terms.push((c, factors));
            }
            polys.push(terms);
        }
        Ok(CompiledSystem { q, polys, unit })
    }

    fn vanishes(&self, point: &[u64]) -> bool {
        if self.unit {
            return false;
        }
        let q = self.q;
        self.polys.iter().all(|terms| {
            let mut acc = 0u64;
            for (c, factors) in terms {
                let mut t = *c;
                for &(slot, e) in factors {
                    let x = point[slot];
                    for _ in 0..e {
                        t = t * x % q;
                    }
                    if t == 0 {
                        break;
                    }
                }
                acc = (acc + t) % q;
            }
            acc == 0
        })
    }
}

fn assignments(q: u64, num_vars: usize) -> Option<u128> {
    (q as u128).checked_pow(num_vars as u32)
}

fn effective_workers(workers: usize) -> usize {
    workers.max(1)
}

/// Exact number of common zeros in `F_q^{|vars|}`, enumerated odometer
/// style with the first variable as the most significant digit. The index
/// range is split into one contiguous block per worker.
pub fn exhaustive_count(
    gens: &[Polynomial],
    vars: &[JetVariable],
    q: u64,
    config: &CountConfig,
) -> Result<PointCountReport> {
    let system = CompiledSystem::new(gens, vars, q)?;
    let total = assignments(q, vars.len()).unwrap_or(u128::MAX);
    if total > config.cap {
        return Err(Error::TooLarge { needed: total, cap: config.cap });
    }
    let workers = effective_workers(config.workers);
    let total = total as u64;
    let chunk = total.div_ceil(workers as u64);
    let count: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let system = &system;
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                scope.spawn(move || count_block(system, vars.len(), start, end))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(PointCountReport {
        q,
        num_vars: vars.len(),
        mode: CountMode::Exact,
        count: CountValue::Exact { exact: count as u128 },
        workers,
        label: EVIDENCE,
    })
}

fn count_block(system: &CompiledSystem, num_vars: usize, start: u64, end: u64) -> u64 {
    if start >= end {
        return 0;
    }
    let q = system.q;
    let mut digits = vec![0u64; num_vars];
    let mut rest = start;
    for d in digits.iter_mut().rev() {
        *d = rest % q;
        rest /= q;
    }
    let mut hits = 0;
    for _ in start..end {
        if system.vanishes(&digits) {
            hits += 1;
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    hits
}

fn z_value(confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Precondition(format!("confidence {confidence} not in (0, 1)")));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(0.5 + confidence / 2.0))
}

/// Unbiased estimate `q^v * hits / samples` with a normal-approximation
/// binomial interval. Worker `w` draws from the ChaCha stream `w` of the
/// master seed, so results depend only on `(seed, samples, workers)`.
pub fn monte_carlo_count(
    gens: &[Polynomial],
    vars: &[JetVariable],
    q: u64,
    samples: u64,
    confidence: f64,
    seed: u64,
    workers: usize,
) -> Result<PointCountReport> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    let z = z_value(confidence)?;
    let system = CompiledSystem::new(gens, vars, q)?;
    let workers = effective_workers(workers);
    let base = samples / workers as u64;
    let extra = samples % workers as u64;
    let hits: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let system = &system;
                let quota = base + u64::from(w < extra);
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(w);
                    let mut point = vec![0u64; vars.len()];
                    let mut hits = 0;
                    for _ in 0..quota {
                        for x in point.iter_mut() {
                            *x = rng.random_range(0..q);
                        }
                        if system.vanishes(&point) {
                            hits += 1;
                        }
                    }
                    hits
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    let space = (q as f64).powi(vars.len() as i32);
    let p = hits as f64 / samples as f64;
    let half_width = z * (p * (1.0 - p) / samples as f64).sqrt() * space;
    Ok(PointCountReport {
        q,
        num_vars: vars.len(),
        mode: CountMode::MonteCarlo { samples, confidence, seed },
        count: CountValue::Estimate { estimate: p * space, half_width, hits },
        workers,
        label: EVIDENCE,
    })
}

/// Least-squares fit of `log(count) = slope * log(q) + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimEstimate {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit (0 for two primes).
    pub residual: f64,
    pub rounded: i64,
    pub label: &'static str,
}

pub fn dim_estimate(points: &[(u64, f64)]) -> Result<DimEstimate> {
    if points.len() < 2 {
        return Err(Error::Precondition("a dimension estimate needs at least two primes".into()));
    }
    let mut qs: Vec<u64> = points.iter().map(|p| p.0).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != points.len() {
        return Err(Error::Precondition("primes must be distinct".into()));
    }
    if let Some((q, _)) = points.iter().find(|(_, c)| *c <= 0.0) {
        return Err(Error::Undefined(format!("zero count at q = {q}")));
    }
    let xs: Vec<f64> = points.iter().map(|(q, _)| (*q as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, c)| c.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(DimEstimate { slope, intercept, residual, rounded: slope.round() as i64, label: EVIDENCE })
}

/// Point-count form of `pi_m^{-1}(0) = J_{m-d}(X) x A^{n(d-1)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OriginFiberCount {
    pub q: u64,
    pub jet_order: usize,
    pub degree: usize,
    /// Jets of order `m` based at the origin.
    pub left: u128,
    /// Points of `J_{m-d}`.
    pub lower_jets: u128,
    /// `q^{n(d-1)}`.
    pub free_factor: u128,
    pub right: u128,
    pub holds: bool,
    pub label: &'static str,
}

pub fn origin_fiber_count_check(
    spec: DeterminantalSpec,
    m: usize,
    q: u64,
    config: &CountConfig,
) -> Result<OriginFiberCount> {
    let d = spec.rank + 1;
    if m < d {
        return Err(Error::OrderTooSmall { m, d });
    }
    let field = CoefficientField::prime(q)?;
    let n = spec.ambient_dimension();

    let pres = jet_ideal_generators_over(spec, m, field)?;
    let origin = RankPoint::standard(spec.rows, spec.cols, 0)?;
    let fiber = fiber_ideal_over_point(&pres, &origin)?;
    let left = exhaustive_count(&fiber.generators, &fiber.variables, q, config)?;

    let lower = jet_ideal_generators_over(spec, m - d, field)?;
    let lower_count = exhaustive_count(&lower.generators, &lower.variables, q, config)?;

    let free_factor = assignments(q, n * (d - 1)).ok_or(Error::TooLarge { needed: u128::MAX, cap: config.cap })?;
    let left = left.count.exact().expect("exhaustive");
    let lower_jets = lower_count.count.exact().expect("exhaustive");
    let right = lower_jets * free_factor;
    Ok(OriginFiberCount {
        q,
        jet_order: m,
        degree: d,
        left,
        lower_jets,
        free_factor,
        right,
        holds: left == right,
        label: EVIDENCE,
    })
}
