use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The coordinate `x_ij^(k)`: coefficient of `t^k` in entry `(i, j)` of a
/// jet matrix. Rows and columns are 1-based, the order is 0-based.
///
/// Field order makes the derived `Ord` lexicographic on `(k, i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JetVariable {
    pub order: usize,
    pub row: usize,
    pub col: usize,
}

impl JetVariable {
    pub fn new(row: usize, col: usize, order: usize) -> Self {
        JetVariable { order, row, col }
    }

    pub fn with_order(self, order: usize) -> Self {
        JetVariable { order, ..self }
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}_{}_{}", self.row, self.col, self.order)
    }
}

impl FromStr for JetVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a jet variable: {s:?}"));
        let rest = s.strip_prefix("x_").ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split('_').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if nums[0] == 0 || nums[1] == 0 {
            return Err(bad());
        }
        Ok(JetVariable::new(nums[0], nums[1], nums[2]))
    }
}

/// A power product of jet variables, stored sparsely with strictly
/// increasing variables and positive exponents.
///
/// `Ord` is the canonical term order: total degree first, ties broken
/// lexicographically with earlier variables (in `JetVariable` order) ranking
/// higher.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(JetVariable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: JetVariable) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (JetVariable, u32)>>(factors: I) -> Self {
        let mut v: Vec<(JetVariable, u32)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_by_key(|f| f.0);
        let mut merged: Vec<(JetVariable, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match merged.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => merged.push((var, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(JetVariable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Sum of `k * e` over factors `x^(k)` raised to `e`.
    pub fn weight(&self) -> usize {
        self.factors.iter().map(|(v, e)| v.order * *e as usize).sum()
    }

    pub fn exponent(&self, v: &JetVariable) -> u32 {
        self.factors
            .binary_search_by(|f| f.0.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = JetVariable> + '_ {
        self.factors.iter().map(|f| f.0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (self.factors[i], other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|&(v, x)| (v, x * e)).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                if a.0 != b.0 {
                    // The monomial carrying the earlier variable is larger.
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize, k: usize) -> JetVariable {
        JetVariable::new(i, j, k)
    }

    #[test]
    fn variable_order_is_k_then_i_then_j() {
        assert!(x(3, 3, 0) < x(1, 1, 1));
        assert!(x(1, 2, 0) < x(2, 1, 0));
        assert!(x(1, 1, 0) < x(1, 2, 0));
    }

    #[test]
    fn variable_text_round_trip() {
        let v = x(2, 3, 4);
        assert_eq!(v.to_string(), "x_2_3_4");
        assert_eq!("x_2_3_4".parse::<JetVariable>().unwrap(), v);
        assert!("x_0_1_1".parse::<JetVariable>().is_err());
        assert!("y_1_1_1".parse::<JetVariable>().is_err());
    }

    #[test]
    fn degree_then_lex() {
        let a = Monomial::var(x(1, 1, 0)).mul(&Monomial::var(x(2, 2, 0)));
        let b = Monomial::var(x(1, 2, 0)).mul(&Monomial::var(x(2, 1, 0)));
        let c = Monomial::var(x(1, 1, 0)).pow(3);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(x(3, 3, 3)) > Monomial::one());
        assert_eq!(a.degree(), 2);
        assert_eq!(a.weight(), 0);
    }

    #[test]
    fn from_factors_merges() {
        let m = Monomial::from_factors([(x(1, 1, 1), 1), (x(1, 1, 0), 0), (x(1, 1, 1), 2)]);
        assert_eq!(m.factors(), &[(x(1, 1, 1), 3)]);
        assert_eq!(m.weight(), 3);
        assert_eq!(m.to_string(), "x_1_1_1^3");
    }
}
