use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field elements are carried as exact rationals. Over a prime field the
/// stored value is always the integer representative in `[0, p)`.
pub type FieldElement = BigRational;

/// The exact coefficient field of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn ensure_same(&self, other: &CoefficientField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }

    /// Maps an arbitrary rational into the field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn element(&self, x: &BigRational) -> Result<FieldElement> {
        match self {
            CoefficientField::Rationals => Ok(x.clone()),
            CoefficientField::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let num = x.numer().mod_floor(&p_big);
                let den = x.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(Error::Undefined(format!("{x} has no image in F_{p}")));
                }
                let den = den.to_u64().expect("reduced below p");
                let inv = mod_inverse(den, *p);
                let v = (num * BigInt::from(inv)).mod_floor(&p_big);
                Ok(BigRational::from_integer(v))
            }
        }
    }

    pub fn from_i64(&self, x: i64) -> FieldElement {
        self.element(&BigRational::from_integer(BigInt::from(x)))
            .expect("integers always map into a field")
    }

    pub fn zero(&self) -> FieldElement {
        BigRational::zero()
    }

    pub fn one(&self) -> FieldElement {
        BigRational::one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.normalize(-a)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Undefined("inverse of zero".into()));
        }
        match self {
            CoefficientField::Rationals => Ok(a.recip()),
            CoefficientField::PrimeField(p) => {
                let v = a.numer().to_u64().expect("canonical representative");
                Ok(BigRational::from_integer(BigInt::from(mod_inverse(v, *p))))
            }
        }
    }

    fn normalize(&self, x: BigRational) -> FieldElement {
        match self {
            CoefficientField::Rationals => x,
            CoefficientField::PrimeField(p) => {
                debug_assert!(x.is_integer());
                BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        match self {
            CoefficientField::Rationals => true,
            CoefficientField::PrimeField(p) => {
                x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p)
            }
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}
