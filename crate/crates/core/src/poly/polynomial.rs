use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{CoefficientField, FieldElement};
use super::monomial::{JetVariable, Monomial};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial in canonical form: no zero coefficients,
/// terms keyed by the canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: CoefficientField,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Leading terms first, so sorted generator lists are deterministic.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field.cmp(&other.field).then_with(|| {
            self.terms
                .iter()
                .rev()
                .cmp(other.terms.iter().rev())
        })
    }
}

impl Polynomial {
    pub fn zero(field: CoefficientField) -> Self {
        Polynomial { field, terms: BTreeMap::new() }
    }

    pub fn one(field: CoefficientField) -> Self {
        Self::constant(field, &field.one())
    }

    pub fn constant(field: CoefficientField, c: &BigRational) -> Self {
        Self::from_terms(field, [(Monomial::one(), c.clone())])
            .expect("constant must lie in the field")
    }

    pub fn var(field: CoefficientField, v: JetVariable) -> Self {
        Self::monomial(field, Monomial::var(v))
    }

    pub fn monomial(field: CoefficientField, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        Polynomial { field, terms }
    }

    /// Collects terms, mapping coefficients into the field and combining
    /// like monomials.
    pub fn from_terms<I>(field: CoefficientField, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = Polynomial::zero(field);
        for (m, c) in terms {
            let c = field.element(&c)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.field.add(existing, &c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.ensure_same(&other.field)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.negate())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.field.ensure_same(&other.field)?;
        let mut out = Polynomial::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same field");
        }
        acc
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// The common weight of all terms when `x^(k)` has weight `k`.
    pub fn isobaric_weight(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(Monomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn variables(&self) -> BTreeSet<JetVariable> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    /// Partial substitution of values for variables; unassigned variables
    /// stay symbolic.
    pub fn substitute(&self, values: &BTreeMap<JetVariable, FieldElement>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m.factors() {
                match values.get(&v) {
                    Some(val) => {
                        let val = self.field.element(val)?;
                        for _ in 0..e {
                            coeff = self.field.mul(&coeff, &val);
                        }
                    }
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_factors(rest), coeff);
        }
        Ok(out)
    }

    /// Exact value at a full assignment.
    pub fn evaluate(&self, values: &BTreeMap<JetVariable, FieldElement>) -> Result<FieldElement> {
        if let Some(v) = self.variables().into_iter().find(|v| !values.contains_key(v)) {
            return Err(Error::UnboundVariable(v));
        }
        let reduced = self.substitute(values)?;
        Ok(reduced.constant_value().expect("all variables bound"))
    }

    /// Renames variables; the map must be injective on the variables present.
    pub fn map_variables<F: Fn(JetVariable) -> JetVariable>(&self, f: F) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let renamed = Monomial::from_factors(m.factors().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(renamed, c.clone());
        }
        out
    }

    /// Reinterprets the coefficients in another field.
    pub fn to_field(&self, field: CoefficientField) -> Result<Polynomial> {
        match (self.field, field) {
            (a, b) if a == b => Ok(self.clone()),
            (CoefficientField::Rationals, _) => {
                Polynomial::from_terms(field, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
            }
            (a, b) => Err(Error::FieldMismatch(a, b)),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str, field: CoefficientField) -> Result<Polynomial> {
        super::text::parse_polynomial(text, field)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let unit = abs.is_one();
            if m.is_one() {
                write_coefficient(f, &abs)?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write_coefficient(f, &abs)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
fn rational(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}
