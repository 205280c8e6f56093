use super::field::CoefficientField;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// An element of `R[t]/(t^(m+1))` with polynomial coefficients.
/// `coeffs[l]` is the coefficient of `t^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: CoefficientField,
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    pub fn zero(field: CoefficientField, order: usize) -> Self {
        TruncatedSeries {
            field,
            coeffs: vec![Polynomial::zero(field); order + 1],
        }
    }

    pub fn constant(p: Polynomial, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(p.field(), order);
        s.coeffs[0] = p;
        s
    }

    /// Builds a series from its coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::ShapeError("a series needs at least one coefficient".into()))?;
        let field = first.field();
        for c in &coeffs {
            field.ensure_same(&c.field())?;
        }
        Ok(TruncatedSeries { field, coeffs })
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> &Polynomial {
        &self.coeffs[l]
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { field: self.field, coeffs })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(Polynomial::negate).collect(),
        }
    }

    /// Product modulo `t^(m+1)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let m = self.order();
        let mut coeffs = vec![Polynomial::zero(self.field); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(TruncatedSeries { field: self.field, coeffs })
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::constant(Polynomial::one(self.field), self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("compatible with itself");
        }
        acc
    }
}

/// Free-function form of [`TruncatedSeries::mul`].
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}
