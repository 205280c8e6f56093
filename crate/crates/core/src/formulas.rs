//! Closed-form dimension, component and threshold predictions.
//!
//! Reducibility results are one-directional, so verdicts are tri-state in
//! spirit: outside the hypotheses the answer is [`Verdict::NoConclusion`],
//! never "irreducible".

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Applicability {
    Applies,
    HypothesesFail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPrediction {
    pub applicable: Applicability,
    pub count: usize,
    /// `dims[q]` for `q = 0..count`.
    pub dims: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ReducibleByTheorem,
    NoConclusion,
}

/// The inequality `(r-c-1)(s-c-1) >= threshold` evaluated for one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub product: i64,
    pub threshold: i64,
    pub holds: bool,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityVerdict {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

/// A value together with whether the hypotheses behind its formula hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flagged {
    pub value: i64,
    pub applicable: Applicability,
}

fn check_range(r: usize, s: usize, c: usize) -> Result<()> {
    if c > r.min(s) {
        return Err(Error::InvalidSpec(format!("rank bound {c} exceeds min({r}, {s})")));
    }
    Ok(())
}

/// `dim X_c = c (r + s - c)`.
pub fn dim_determinantal(r: usize, s: usize, c: usize) -> Result<u64> {
    check_range(r, s, c)?;
    Ok((c * (r + s - c)) as u64)
}

/// Dimension of the closure of the jets over the smooth locus:
/// `(m + 1) dim X_c`.
pub fn dim_smooth_component(r: usize, s: usize, c: usize, m: usize) -> Result<u64> {
    Ok((m as u64 + 1) * dim_determinantal(r, s, c)?)
}

fn singular_j1_value(r: i64, s: i64, c: i64) -> i64 {
    r * s + (c - 1) * (r + s - c + 1)
}

/// `rs + (c-1)(r+s-c+1)`, flagged `Applies` only when `c >= 1`,
/// `r, s >= c + 2` and `r + s >= 2c + 5`.
pub fn dim_j1(r: usize, s: usize, c: usize) -> Flagged {
    let value = singular_j1_value(r as i64, s as i64, c as i64);
    let applies = c >= 1 && r >= c + 2 && s >= c + 2 && r + s >= 2 * c + 5;
    Flagged {
        value,
        applicable: if applies { Applicability::Applies } else { Applicability::HypothesesFail },
    }
}

/// Dimension of the first-jet fiber over the singular locus (rank <= c-1).
pub fn singular_fiber_dim_j1(r: usize, s: usize, c: usize) -> Result<u64> {
    check_range(r, s, c)?;
    if c == 0 {
        return Err(Error::NoSingularLocus);
    }
    Ok(singular_j1_value(r as i64, s as i64, c as i64) as u64)
}

fn corank_product(r: usize, s: usize, c: usize) -> i64 {
    (r as i64 - c as i64 - 1) * (s as i64 - c as i64 - 1)
}

/// Odd jet schemes are reducible when `c >= 1`, `r, s >= c + 2`,
/// `r + s >= 2c + 5`.
pub fn odd_jets_reducible(r: usize, s: usize, c: usize) -> Result<ReducibilityVerdict> {
    check_range(r, s, c)?;
    if c == 0 {
        return Err(Error::InvalidSpec("odd-jet reducibility needs c >= 1".into()));
    }
    let hyp = r >= c + 2 && s >= c + 2 && r + s >= 2 * c + 5;
    let product = corank_product(r, s, c);
    Ok(ReducibilityVerdict {
        verdict: if hyp { Verdict::ReducibleByTheorem } else { Verdict::NoConclusion },
        certificate: Certificate {
            product,
            threshold: 2,
            holds: product >= 2,
            statement: format!("(r-c-1)(s-c-1) = {product} >= 2"),
        },
    })
}

/// The second jet scheme is reducible when `c >= 2`, `r, s >= c + 2`,
/// `r + s >= 2c + 6`.
pub fn second_jet_reducible(r: usize, s: usize, c: usize) -> Result<ReducibilityVerdict> {
    check_range(r, s, c)?;
    if c < 2 {
        return Err(Error::InvalidSpec("second-jet reducibility needs c >= 2".into()));
    }
    let hyp = r >= c + 2 && s >= c + 2 && r + s >= 2 * c + 6;
    let product = corank_product(r, s, c);
    Ok(ReducibilityVerdict {
        verdict: if hyp { Verdict::ReducibleByTheorem } else { Verdict::NoConclusion },
        certificate: Certificate {
            product,
            threshold: 3,
            holds: product >= 3,
            statement: format!("(r-c-1)(s-c-1) = {product} >= 3"),
        },
    })
}

/// Dimensions of the second-jet preimages of `X_{c-2}` and of the rank
/// `c-1` stratum.
pub fn second_jet_fiber_dims(r: usize, s: usize, c: usize) -> Result<(i64, i64)> {
    check_range(r, s, c)?;
    if c < 2 {
        return Err(Error::InvalidSpec("second-jet fiber dimensions need c >= 2".into()));
    }
    let (r, s, c) = (r as i64, s as i64, c as i64);
    let low = 2 * r * s + (c - 2) * (r + s - c + 2);
    let corank_one = r + s - 2 * c + 1 + 2 * r * s - (r - c + 1) * (s - c + 1) + (c - 1) * (r + s - c + 1);
    Ok((low, corank_one))
}

fn rank1_applies(r: usize, s: usize) -> bool {
    r > s && s >= 3
}

/// Components of `J_m` of the rank-at-most-one variety for `r > s >= 3`:
/// `floor((m+1)/2) + 1` of them, of dimensions `q rs + (m+1-2q)(r+s-1)`.
pub fn rank1_components(r: usize, s: usize, m: usize) -> ComponentPrediction {
    if !rank1_applies(r, s) {
        return ComponentPrediction {
            applicable: Applicability::HypothesesFail,
            count: 0,
            dims: Vec::new(),
        };
    }
    let count = m.div_ceil(2) + 1;
    ComponentPrediction {
        applicable: Applicability::Applies,
        count,
        dims: (0..count).map(|q| rank1_component_dim(r, s, m, q)).collect(),
    }
}

fn rank1_component_dim(r: usize, s: usize, m: usize, q: usize) -> u64 {
    (q * r * s + (m + 1 - 2 * q) * (r + s - 1)) as u64
}

/// `dim J_m = floor((m+1)/2) rs + ((m+1) mod 2)(r+s-1)` for `r > s >= 3`,
/// the largest component dimension.
pub fn rank1_jet_dim(r: usize, s: usize, m: usize) -> Result<u64> {
    if !rank1_applies(r, s) {
        return Err(Error::HypothesesFail(format!("need r > s >= 3, got r={r}, s={s}")));
    }
    Ok((m.div_ceil(2) * r * s + ((m + 1) % 2) * (r + s - 1)) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LctReport {
    /// `rs - sup_m dim J_m / (m+1)`.
    #[serde(serialize_with = "ratio_text")]
    pub lct: Ratio<i64>,
    #[serde(serialize_with = "ratio_text")]
    pub supremum: Ratio<i64>,
    /// Smallest `m` in the window attaining the supremum.
    pub first_maximizer: usize,
    pub attained_at_m1: bool,
    /// Every odd `m` in the window attains `rs/2`.
    pub odd_orders_attain_half: bool,
    pub window: usize,
}

fn ratio_text<S: serde::Serializer>(x: &Ratio<i64>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&x.to_string())
}

pub const DEFAULT_LCT_WINDOW: usize = 10_000;

/// Log canonical threshold of `(A^{rs}, X)` for the rank-at-most-one
/// variety, from the jet-dimension sweep over `0 <= m <= window`.
pub fn lct_rank1(r: usize, s: usize, window: usize) -> Result<LctReport> {
    let rs = (r * s) as i64;
    let half = Ratio::new(rs, 2);
    let mut supremum = Ratio::from_integer(0);
    let mut first_maximizer = 0;
    let mut odd_orders_attain_half = true;
    for m in 0..=window {
        let ratio = Ratio::new(rank1_jet_dim(r, s, m)? as i64, m as i64 + 1);
        if ratio > supremum {
            supremum = ratio;
            first_maximizer = m;
        }
        if m % 2 == 1 && ratio != half {
            odd_orders_attain_half = false;
        }
    }
    let at_m1 = Ratio::new(rank1_jet_dim(r, s, 1)? as i64, 2);
    Ok(LctReport {
        lct: Ratio::from_integer(rs) - supremum,
        supremum,
        first_maximizer,
        attained_at_m1: at_m1 == supremum,
        odd_orders_attain_half,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinantal_dimension() {
        assert_eq!(dim_determinantal(3, 3, 1).unwrap(), 5);
        assert_eq!(dim_determinantal(4, 3, 2).unwrap(), 10);
        assert_eq!(dim_determinantal(4, 5, 0).unwrap(), 0);
        assert!(matches!(dim_determinantal(2, 3, 3), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn smooth_component_dimension() {
        assert_eq!(dim_smooth_component(3, 3, 1, 1).unwrap(), 10);
        assert_eq!(dim_smooth_component(4, 5, 2, 0).unwrap(), dim_determinantal(4, 5, 2).unwrap());
        assert_eq!(dim_smooth_component(4, 3, 1, 3).unwrap(), 24);
    }

    #[test]
    fn first_jet_dimension_flags() {
        assert_eq!(dim_j1(4, 4, 1), Flagged { value: 16, applicable: Applicability::Applies });
        assert_eq!(dim_j1(3, 3, 1), Flagged { value: 9, applicable: Applicability::HypothesesFail });
        assert_eq!(dim_j1(5, 4, 2), Flagged { value: 28, applicable: Applicability::Applies });
        assert_eq!(dim_j1(5, 5, 0).applicable, Applicability::HypothesesFail);
    }

    #[test]
    fn singular_fiber_dimension() {
        assert_eq!(singular_fiber_dim_j1(3, 3, 1).unwrap(), 9);
        assert_eq!(singular_fiber_dim_j1(4, 4, 2).unwrap(), 23);
        assert_eq!(singular_fiber_dim_j1(2, 2, 1).unwrap(), 4);
        assert_eq!(singular_fiber_dim_j1(2, 2, 0), Err(Error::NoSingularLocus));
    }

    #[test]
    fn odd_jet_verdicts() {
        assert_eq!(odd_jets_reducible(4, 3, 1).unwrap().verdict, Verdict::ReducibleByTheorem);
        let v = odd_jets_reducible(3, 3, 1).unwrap();
        assert_eq!(v.verdict, Verdict::NoConclusion);
        assert_eq!(v.certificate.product, 1);
        assert_eq!(odd_jets_reducible(5, 5, 3).unwrap().verdict, Verdict::NoConclusion);
        assert!(matches!(odd_jets_reducible(3, 3, 0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn second_jet_verdicts() {
        assert_eq!(second_jet_reducible(4, 4, 2).unwrap().verdict, Verdict::NoConclusion);
        assert_eq!(second_jet_reducible(6, 5, 2).unwrap().verdict, Verdict::ReducibleByTheorem);
        assert!(matches!(second_jet_reducible(4, 4, 1), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn second_jet_fibers() {
        assert_eq!(second_jet_fiber_dims(4, 4, 2).unwrap(), (32, 35));
        assert_eq!(second_jet_fiber_dims(5, 4, 2).unwrap(), (40, 42));
        assert_eq!(second_jet_fiber_dims(6, 5, 2).unwrap(), (60, 58));
        assert_eq!(second_jet_fiber_dims(6, 6, 3).unwrap(), (83, 83));
        assert!(second_jet_fiber_dims(6, 5, 1).is_err());
    }

    #[test]
    fn rank_one_components() {
        let p = rank1_components(5, 3, 3);
        assert_eq!(p.applicable, Applicability::Applies);
        assert_eq!((p.count, p.dims), (3, vec![28, 29, 30]));
        let p = rank1_components(4, 3, 0);
        assert_eq!((p.count, p.dims), (1, vec![6]));
        assert_eq!(rank1_components(3, 3, 1).applicable, Applicability::HypothesesFail);
    }

    #[test]
    fn rank_one_jet_dimension() {
        assert_eq!(rank1_jet_dim(5, 3, 3).unwrap(), 30);
        assert_eq!(rank1_jet_dim(5, 3, 2).unwrap(), 22);
        assert_eq!(rank1_jet_dim(4, 3, 1).unwrap(), 12);
        assert!(matches!(rank1_jet_dim(3, 3, 1), Err(Error::HypothesesFail(_))));
    }

    #[test]
    fn threshold_values() {
        assert_eq!(lct_rank1(5, 3, 200).unwrap().lct, Ratio::new(15, 2));
        assert_eq!(lct_rank1(4, 3, 200).unwrap().lct, Ratio::from_integer(6));
        assert_eq!(lct_rank1(7, 4, 200).unwrap().lct, Ratio::from_integer(14));
        assert!(lct_rank1(3, 3, 10).is_err());
    }

    #[test]
    fn four_by_three_ties_at_m0() {
        // For 4x3 the smooth part already reaches rs/2 at m = 0.
        let rep = lct_rank1(4, 3, 50).unwrap();
        assert_eq!(rep.first_maximizer, 0);
        assert!(rep.attained_at_m1);
        let rep = lct_rank1(5, 3, 50).unwrap();
        assert_eq!(rep.first_maximizer, 1);
    }
}
