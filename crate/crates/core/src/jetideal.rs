//! Defining equations of jet schemes of rank-bounded matrix loci.
//!
//! An `m`-jet of the variety of `r x s` matrices of rank at most `c` is a
//! matrix whose entries are `x_ij^(0) + x_ij^(1) t + ... + x_ij^(m) t^m`
//! and whose `(c+1)`-minors vanish modulo `t^(m+1)`. The defining ideal is
//! generated by the `t^l` coefficients of those minors.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    minors, CoefficientField, FieldElement, JetVariable, Polynomial, SeriesMatrix, TruncatedSeries,
};

/// `X_c`: the `rows x cols` matrices of rank at most `rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeterminantalSpec {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl DeterminantalSpec {
    pub fn new(rows: usize, cols: usize, rank: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidSpec(format!("dimensions must be positive, got {rows}x{cols}")));
        }
        if rank > rows.min(cols) {
            return Err(Error::InvalidSpec(format!(
                "rank bound {rank} exceeds min({rows}, {cols})"
            )));
        }
        Ok(DeterminantalSpec { rows, cols, rank })
    }

    /// Number of `(c+1)`-minors of the generic matrix.
    pub fn minor_count(&self) -> usize {
        let d = self.rank + 1;
        binomial(self.rows, d) * binomial(self.cols, d)
    }

    pub fn ambient_dimension(&self) -> usize {
        self.rows * self.cols
    }
}

/// Generators of `J_m(X_c)` with the full variable universe
/// `{x_ij^(k) : 1 <= i <= r, 1 <= j <= s, 0 <= k <= m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetIdealPresentation {
    pub spec: DeterminantalSpec,
    pub jet_order: usize,
    pub generators: Vec<Polynomial>,
    pub variables: Vec<JetVariable>,
}

/// Variables of orders `orders` in the fixed `(k, i, j)` order.
pub fn jet_variables(rows: usize, cols: usize, orders: std::ops::RangeInclusive<usize>) -> Vec<JetVariable> {
    let mut vars = Vec::new();
    for k in orders {
        for i in 1..=rows {
            for j in 1..=cols {
                vars.push(JetVariable::new(i, j, k));
            }
        }
    }
    vars
}

/// The `r x s` matrix with entry `(i, j)` equal to
/// `x_ij^(0) + x_ij^(1) t + ... + x_ij^(m) t^m`.
pub fn generic_jet_matrix(rows: usize, cols: usize, m: usize, field: CoefficientField) -> Result<SeriesMatrix> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidSpec("matrix dimensions must be positive".into()));
    }
    (1..=rows)
        .map(|i| {
            (1..=cols)
                .map(|j| {
                    TruncatedSeries::from_coeffs(
                        (0..=m).map(|k| Polynomial::var(field, JetVariable::new(i, j, k))).collect(),
                    )
                })
                .collect()
        })
        .collect()
}

/// Generators `Delta^(l)` for every `(c+1)`-minor `Delta` and `0 <= l <= m`,
/// ordered by minor row set, column set, then `l`.
pub fn jet_ideal_generators(spec: DeterminantalSpec, m: usize) -> Result<JetIdealPresentation> {
    jet_ideal_generators_over(spec, m, CoefficientField::Rationals)
}

pub fn jet_ideal_generators_over(
    spec: DeterminantalSpec,
    m: usize,
    field: CoefficientField,
) -> Result<JetIdealPresentation> {
    let spec = DeterminantalSpec::new(spec.rows, spec.cols, spec.rank)?;
    let matrix = generic_jet_matrix(spec.rows, spec.cols, m, field)?;
    let generators = minors(&matrix, spec.rank + 1)?
        .into_iter()
        .flat_map(|minor| minor.value.into_coeffs())
        .collect();
    Ok(JetIdealPresentation {
        spec,
        jet_order: m,
        generators,
        variables: jet_variables(spec.rows, spec.cols, 0..=m),
    })
}

/// The `c`-minors of `(x_ij^(0))`, which cut out matrices of rank at most
/// `c - 1`. The presentation carries `jet_order = 0` and rank bound `c - 1`.
pub fn singular_locus_ideal(spec: DeterminantalSpec) -> Result<JetIdealPresentation> {
    let spec = DeterminantalSpec::new(spec.rows, spec.cols, spec.rank)?;
    if spec.rank == 0 {
        return Err(Error::NoSingularLocus);
    }
    jet_ideal_generators(DeterminantalSpec { rank: spec.rank - 1, ..spec }, 0)
}

/// A concrete point of `A^{rs}` used as the base of a fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPoint {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<FieldElement>>,
}

impl RankPoint {
    /// `A_k`: identity `k x k` block in the upper-left corner, zeros elsewhere.
    pub fn standard(rows: usize, cols: usize, k: usize) -> Result<Self> {
        if k > rows.min(cols) {
            return Err(Error::InvalidSpec(format!("rank {k} exceeds min({rows}, {cols})")));
        }
        let entries = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j && i < k { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Ok(RankPoint { rows, cols, entries })
    }

    pub fn from_entries(entries: Vec<Vec<FieldElement>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeError("point must be a nonempty rectangular matrix".into()));
        }
        Ok(RankPoint { rows, cols, entries })
    }

    /// Rank over `Q` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            for r in 0..self.rows {
                if r != rank && !a[r][col].is_zero() {
                    let factor = &a[r][col] / &a[rank][col];
                    #[allow(clippy::needless_range_loop)]
                    for c in col..self.cols {
                        let delta = &factor * &a[rank][c];
                        a[r][c] -= delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn order_zero_assignment(&self) -> BTreeMap<JetVariable, FieldElement> {
        let mut values = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                values.insert(JetVariable::new(i + 1, j + 1, 0), v.clone());
            }
        }
        values
    }
}

/// Generators of the fiber of `J_m(X_c) -> A^{rs}` over a point, in the
/// variables of order `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPresentation {
    pub generators: Vec<Polynomial>,
    /// Generators that vanished identically after substitution.
    pub dropped_zero: usize,
    pub variables: Vec<JetVariable>,
}

pub fn fiber_ideal_over_point(pres: &JetIdealPresentation, pt: &RankPoint) -> Result<FiberPresentation> {
    if pt.rows != pres.spec.rows || pt.cols != pres.spec.cols {
        return Err(Error::ShapeError(format!(
            "point is {}x{}, presentation is {}x{}",
            pt.rows, pt.cols, pres.spec.rows, pres.spec.cols
        )));
    }
    let values = pt.order_zero_assignment();
    let mut generators = Vec::new();
    let mut dropped_zero = 0;
    for g in &pres.generators {
        let reduced = g.substitute(&values)?;
        if reduced.is_zero() {
            dropped_zero += 1;
        } else {
            generators.push(reduced);
        }
    }
    let variables = if pres.jet_order == 0 {
        Vec::new()
    } else {
        jet_variables(pres.spec.rows, pres.spec.cols, 1..=pres.jet_order)
    };
    Ok(FiberPresentation { generators, dropped_zero, variables })
}

/// Generators of `J_m` of the scheme cut out by arbitrary polynomials in the
/// order-0 variables: every `x_ij^(0)` is replaced by its generic jet and the
/// `t^l` coefficients are collected, generator by generator.
pub fn jet_generators_of(gens: &[Polynomial], m: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::with_capacity(gens.len() * (m + 1));
    for g in gens {
        if let Some(v) = g.variables().into_iter().find(|v| v.order != 0) {
            return Err(Error::Precondition(format!("{v} is not an order-0 variable")));
        }
        let field = g.field();
        let mut acc = TruncatedSeries::zero(field, m);
        for (mono, c) in g.terms() {
            let mut term = TruncatedSeries::constant(Polynomial::constant(field, c), m);
            for &(v, e) in mono.factors() {
                let jet = TruncatedSeries::from_coeffs(
                    (0..=m).map(|k| Polynomial::var(field, v.with_order(k))).collect(),
                )?;
                term = term.mul(&jet.pow(e))?;
            }
            acc = acc.add(&term)?;
        }
        out.extend(acc.into_coeffs());
    }
    Ok(out)
}

/// Outcome of the presentation-level check of
/// `pi_m^{-1}(0) = J_{m-d}(X) x A^{n(d-1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OriginFiberReport {
    pub holds: bool,
    pub degree: usize,
    pub jet_order: usize,
    pub ambient_variables: usize,
    /// Surviving generators of `J_m` after setting all order-0 variables to 0.
    pub survivors: Vec<String>,
    /// Generators of `J_{m-d}` with `x^(k)` renamed to `x^(k+1)`.
    pub expected: Vec<String>,
    pub survivors_match: bool,
    /// No survivor mentions a variable of order `m-d+2 ..= m`.
    pub high_orders_absent: bool,
    /// `n (d - 1)`: dimension of the free affine factor.
    pub free_dimension: usize,
}

pub fn verify_origin_fiber_isomorphism(gens: &[Polynomial], n: usize, m: usize) -> Result<OriginFiberReport> {
    let mut degree = None;
    for g in gens {
        let d = g
            .homogeneous_degree()
            .ok_or_else(|| Error::HomogeneityError(format!("{g} is not homogeneous")))?;
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::HomogeneityError(format!("degrees {prev} and {d} are mixed")));
            }
            _ => {}
        }
    }
    let d = degree.ok_or_else(|| Error::HomogeneityError("empty generator list".into()))? as usize;
    if d < 2 {
        return Err(Error::HomogeneityError(format!("common degree {d} is below 2")));
    }
    if m < d {
        return Err(Error::OrderTooSmall { m, d });
    }

    let zero_at_origin: BTreeMap<JetVariable, FieldElement> = gens
        .iter()
        .flat_map(|g| g.variables())
        .map(|v| (v, BigRational::zero()))
        .collect();
    let survivors: BTreeSet<Polynomial> = jet_generators_of(gens, m)?
        .iter()
        .map(|g| g.substitute(&zero_at_origin))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    let expected: BTreeSet<Polynomial> = jet_generators_of(gens, m - d)?
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.map_variables(|v| v.with_order(v.order + 1)))
        .collect();

    let survivors_match = survivors == expected;
    let high_orders_absent = survivors
        .iter()
        .flat_map(|g| g.variables())
        .all(|v| v.order < m - d + 2);
    Ok(OriginFiberReport {
        holds: survivors_match && high_orders_absent,
        degree: d,
        jet_order: m,
        ambient_variables: n,
        survivors: survivors.iter().map(ToString::to_string).collect(),
        expected: expected.iter().map(ToString::to_string).collect(),
        survivors_match,
        high_orders_absent,
        free_dimension: n * (d - 1),
    })
}
