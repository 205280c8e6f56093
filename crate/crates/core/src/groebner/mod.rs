//! Groebner bases over `Q` and `F_p`: Buchberger's algorithm, normal forms,
//! ideal membership and containment, and Krull dimension.

mod components;
mod dimension;
mod engine;
mod order;

use std::collections::HashMap;

use serde::Serialize;

pub use components::{verify_first_jet_components, CheckStatus, ComponentsReport, SubCheck};
pub use dimension::max_independent_set;
pub use order::{MonomialOrder, OrderKind};

use crate::error::{Error, Result};
use crate::poly::{CoefficientField, JetVariable, Monomial, Polynomial};
use engine::{Arith, IPoly, Modular, Mono, Rationals, Ring};

pub const DEFAULT_MAX_PAIRS: usize = 200_000;

/// Resource limit for one Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: DEFAULT_MAX_PAIRS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub field: CoefficientField,
    /// Monic elements sorted by increasing leading monomial.
    pub elements: Vec<Polynomial>,
    pub reduced: bool,
    pub pair_reductions: usize,
}

struct Context {
    index: HashMap<JetVariable, usize>,
    order: MonomialOrder,
}

impl Context {
    fn new(order: &MonomialOrder) -> Self {
        Context {
            index: order.variables.iter().enumerate().map(|(i, v)| (*v, i)).collect(),
            order: order.clone(),
        }
    }

    fn import<A: Arith>(&self, ring: &Ring<A>, p: &Polynomial) -> Result<IPoly<A::E>> {
        let n = self.order.len();
        let mut out: IPoly<A::E> = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let mut exp = vec![0u16; n];
            for &(v, e) in m.factors() {
                let idx = *self.index.get(&v).ok_or_else(|| {
                    Error::Precondition(format!("{v} is not in the monomial order's variable list"))
                })?;
                exp[idx] = u16::try_from(e).map_err(|_| Error::Precondition("exponent too large".into()))?;
            }
            out.push((Mono::new(exp), ring.arith.import(c)));
        }
        ring.sort(&mut out);
        Ok(out)
    }

    fn export<A: Arith>(&self, ring: &Ring<A>, p: &IPoly<A::E>, field: CoefficientField) -> Polynomial {
        let terms = p.iter().map(|(m, c)| {
            let mono = Monomial::from_factors(
                m.exp
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.order.variables[i], e as u32)),
            );
            (mono, ring.arith.export(c))
        });
        Polynomial::from_terms(field, terms).expect("exported coefficients lie in the field")
    }
}

fn common_field(gens: &[Polynomial]) -> Result<CoefficientField> {
    let field = gens
        .first()
        .map(Polynomial::field)
        .ok_or_else(|| Error::Precondition("empty generator list".into()))?;
    for g in gens {
        field.ensure_same(&g.field())?;
    }
    Ok(field)
}

fn run<A: Arith>(
    ring: Ring<A>,
    ctx: &Context,
    gens: &[Polynomial],
    field: CoefficientField,
    budget: Budget,
) -> Result<GroebnerBasis> {
    let input = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.import(&ring, g))
        .collect::<Result<Vec<_>>>()?;
    let (basis, pair_reductions) = engine::buchberger(ring, input, budget.max_pairs)?;
    Ok(GroebnerBasis {
        order: ctx.order.clone(),
        field,
        elements: basis.iter().map(|p| ctx.export(&ring, p, field)).collect(),
        reduced: true,
        pair_reductions,
    })
}

/// Reduced Groebner basis with the default budget.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, order, Budget::default())
}

pub fn buchberger_with_budget(gens: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let field = common_field(gens)?;
    let ctx = Context::new(order);
    match field {
        CoefficientField::Rationals => run(Ring { arith: Rationals, kind: order.kind }, &ctx, gens, field, budget),
        CoefficientField::PrimeField(p) => {
            run(Ring { arith: Modular { p }, kind: order.kind }, &ctx, gens, field, budget)
        }
    }
}

fn with_ring<T>(
    field: CoefficientField,
    kind: OrderKind,
    q: impl FnOnce(Ring<Rationals>) -> T,
    p: impl FnOnce(Ring<Modular>) -> T,
) -> T {
    match field {
        CoefficientField::Rationals => q(Ring { arith: Rationals, kind }),
        CoefficientField::PrimeField(prime) => p(Ring { arith: Modular { p: prime }, kind }),
    }
}

fn reduce_in<A: Arith>(ring: Ring<A>, ctx: &Context, f: &Polynomial, basis: &[Polynomial], field: CoefficientField) -> Result<Polynomial> {
    let f = ctx.import(&ring, f)?;
    let basis = basis.iter().map(|g| ctx.import(&ring, g)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&IPoly<A::E>> = basis.iter().collect();
    Ok(ctx.export(&ring, &ring.reduce(&f, &refs), field))
}

impl GroebnerBasis {
    /// Remainder of multivariate division by the (monic) basis elements.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.field.ensure_same(&p.field())?;
        let ctx = Context::new(&self.order);
        with_ring(
            self.field,
            self.order.kind,
            |ring| reduce_in(ring, &ctx, p, &self.elements, self.field),
            |ring| reduce_in(ring, &ctx, p, &self.elements, self.field),
        )
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.constant_value().is_some_and(|c| c != num_traits::Zero::zero()))
    }

    /// Leading monomials under the basis order, as variable bitmasks.
    fn leading_supports(&self) -> Result<Vec<u64>> {
        if self.order.len() > 64 {
            return Err(Error::Precondition("dimension search supports at most 64 variables".into()));
        }
        let ctx = Context::new(&self.order);
        let supports = |elements: Vec<u64>| elements;
        let masks = with_ring(
            self.field,
            self.order.kind,
            |ring| self.elements.iter().map(|g| ctx.import(&ring, g).map(|p| p[0].0.mask)).collect::<Result<Vec<_>>>(),
            |ring| self.elements.iter().map(|g| ctx.import(&ring, g).map(|p| p[0].0.mask)).collect::<Result<Vec<_>>>(),
        )?;
        Ok(supports(masks))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let ctx = Context::new(&self.order);
        with_ring(
            self.field,
            self.order.kind,
            |ring| self.elements.iter().map(|g| lead_of(&ring, &ctx, g, self.field)).collect(),
            |ring| self.elements.iter().map(|g| lead_of(&ring, &ctx, g, self.field)).collect(),
        )
    }

    /// Krull dimension of `k[vars]/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        Ok(max_independent_set(self.order.len(), &self.leading_supports()?))
    }

    /// Every S-polynomial of a pair of elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        let ctx = Context::new(&self.order);
        with_ring(
            self.field,
            self.order.kind,
            |ring| criterion(ring, &ctx, &self.elements),
            |ring| criterion(ring, &ctx, &self.elements),
        )
    }

    /// No term of an element is divisible by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.terms().all(|(m, _)| {
                leads
                    .iter()
                    .enumerate()
                    .all(|(j, l)| j == i || !divides(l, m))
            })
        })
    }
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.factors().iter().all(|(v, e)| b.exponent(v) >= *e)
}

fn lead_of<A: Arith>(ring: &Ring<A>, ctx: &Context, g: &Polynomial, field: CoefficientField) -> Monomial {
    let p = ctx.import(ring, g).expect("basis variables are in the order");
    let lead = vec![(p[0].0.clone(), ring.arith.one())];
    ctx.export(ring, &lead, field).leading_term().expect("nonzero").0.clone()
}

fn criterion<A: Arith>(ring: Ring<A>, ctx: &Context, elements: &[Polynomial]) -> Result<bool> {
    let polys = elements.iter().map(|g| ctx.import(&ring, g)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&IPoly<A::E>> = polys.iter().collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let s = ring.s_poly(&polys[i], &polys[j]);
            if !ring.reduce(&s, &refs).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Free-function form of [`GroebnerBasis::normal_form`].
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.normal_form(p)
}

pub fn membership(p: &Polynomial, basis: &GroebnerBasis) -> Result<bool> {
    basis.contains(p)
}

/// Whether the ideal generated by `i` lies in the ideal generated by `j`.
pub fn ideal_contains(i: &[Polynomial], j: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<bool> {
    let basis = buchberger_with_budget(j, order, budget)?;
    for g in i {
        if !basis.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Krull dimension of `k[order.variables]/(gens)`; `-1` for the unit ideal.
pub fn krull_dimension(gens: &[Polynomial], order: &MonomialOrder, budget: Budget) -> Result<i64> {
    if gens.iter().all(Polynomial::is_zero) {
        return Ok(order.len() as i64);
    }
    buchberger_with_budget(gens, order, budget)?.krull_dimension()
}
