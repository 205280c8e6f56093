//! Codimension of intersections of contact loci, computed from log-resolution
//! data as an integer minimization:
//!
//! ```text
//! min  sum_j nu_j (k_j + 1)
//! s.t. sum_j a_ij nu_j >= m_i  for every center i,
//!      the divisors E_j with nu_j >= 1 have a common point.
//! ```
//!
//! The resolution itself is never constructed; multiplicities, discrepancies
//! and the intersection pattern of the divisors are inputs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplicities `a[i][j]` of `E_j` in the preimage of center `Y_i`,
/// discrepancies `k[j]`, and the families of divisors (1-based indices)
/// with nonempty common intersection.
///
/// Listing maximal families is enough: subsets of a listed family are
/// admissible, and every single divisor is admissible on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogResolutionInput {
    pub n: usize,
    pub k: Vec<u64>,
    pub a: Vec<Vec<u64>>,
    pub families: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactQuery {
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContactSolution {
    Feasible { value: u64, nu: Vec<u64> },
    Infeasible,
}

impl ContactSolution {
    pub fn value(&self) -> Option<u64> {
        match self {
            ContactSolution::Feasible { value, .. } => Some(*value),
            ContactSolution::Infeasible => None,
        }
    }
}

impl Serialize for ContactSolution {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("ContactSolution", 2)?;
        match self {
            ContactSolution::Feasible { value, nu } => {
                st.serialize_field("value", value)?;
                st.serialize_field("nu", nu)?;
            }
            ContactSolution::Infeasible => {
                st.serialize_field("value", "infeasible")?;
                st.serialize_field("nu", &Vec::<u64>::new())?;
            }
        }
        st.end()
    }
}

/// Validated resolution data with families as bitmasks.
#[derive(Debug, Clone)]
pub struct Resolution {
    n: usize,
    weights: Vec<u64>,
    a: Vec<Vec<u64>>,
    families: Vec<u64>,
}

impl LogResolutionInput {
    pub fn centers(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self) -> Result<Resolution> {
        let n = self.n;
        if n == 0 || n > 63 {
            return Err(Error::InvalidResolution(format!("need 1 <= n <= 63 divisors, got {n}")));
        }
        if self.k.len() != n {
            return Err(Error::InvalidResolution(format!("k has length {}, expected {n}", self.k.len())));
        }
        if self.a.is_empty() {
            return Err(Error::InvalidResolution("at least one center is required".into()));
        }
        if let Some(row) = self.a.iter().find(|row| row.len() != n) {
            return Err(Error::InvalidResolution(format!("a row has length {}, expected {n}", row.len())));
        }
        let mut families: Vec<u64> = Vec::new();
        for fam in &self.families {
            let mut mask = 0u64;
            for &j in fam {
                if j == 0 || j > n {
                    return Err(Error::InvalidResolution(format!("divisor index {j} outside 1..={n}")));
                }
                if mask & (1 << (j - 1)) != 0 {
                    return Err(Error::InvalidResolution(format!("divisor {j} repeated in a family")));
                }
                mask |= 1 << (j - 1);
            }
            families.push(mask);
        }
        families.extend((0..n).map(|j| 1u64 << j));
        // Keep only maximal families.
        families.sort_unstable();
        families.dedup();
        let maximal: Vec<u64> = families
            .iter()
            .copied()
            .filter(|&f| !families.iter().any(|&g| g != f && g & f == f))
            .collect();
        Ok(Resolution {
            n,
            weights: self.k.iter().map(|k| k + 1).collect(),
            a: self.a.clone(),
            families: maximal,
        })
    }
}

impl Resolution {
    pub fn divisors(&self) -> usize {
        self.n
    }

    pub fn centers(&self) -> usize {
        self.a.len()
    }

    /// Whether the divisors in `support` meet.
    pub fn admissible(&self, support: u64) -> bool {
        self.families.iter().any(|&f| f & support == support)
    }

    pub fn cost(&self, nu: &[u64]) -> u64 {
        nu.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    pub fn feasible(&self, nu: &[u64], orders: &[u64]) -> bool {
        let support = nu
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .fold(0u64, |acc, (j, _)| acc | (1 << j));
        self.admissible(support)
            && self.a.iter().zip(orders).all(|(row, &m)| {
                row.iter().zip(nu).map(|(a, v)| a * v).sum::<u64>() >= m
            })
    }
}

struct Search<'a> {
    res: &'a Resolution,
    orders: &'a [u64],
    /// Divisor indices in branching order.
    order: Vec<usize>,
    /// Largest useful value of each `nu_j`.
    caps: Vec<u64>,
    nu: Vec<u64>,
    best: Option<(u64, Vec<u64>)>,
}

impl Search<'_> {
    /// Lower bound on the extra cost needed to meet every residual demand
    /// using divisors `order[depth..]` that keep the support admissible.
    fn residual_bound(&self, depth: usize, support: u64, residual: &[u64]) -> Option<u64> {
        let mut bound = 0;
        for (i, &need) in residual.iter().enumerate() {
            if need == 0 {
                continue;
            }
            let best_i = self.order[depth..]
                .iter()
                .filter(|&&j| self.res.a[i][j] > 0 && self.res.admissible(support | (1 << j)))
                .map(|&j| (need * self.res.weights[j]).div_ceil(self.res.a[i][j]))
                .min()?;
            bound = bound.max(best_i);
        }
        Some(bound)
    }

    fn run(&mut self, depth: usize, cost: u64, support: u64, residual: &mut Vec<u64>) {
        if residual.iter().all(|&r| r == 0) {
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.nu.clone()));
            }
            return;
        }
        if depth == self.order.len() {
            return;
        }
        let Some(lb) = self.residual_bound(depth, support, residual) else {
            return;
        };
        if let Some((best, _)) = &self.best {
            if cost + lb >= *best {
                return;
            }
        }
        let j = self.order[depth];
        let w = self.res.weights[j];
        let mut cap = self.caps[j];
        if let Some((best, _)) = &self.best {
            // Only strictly improving assignments are worth exploring.
            cap = cap.min((best - cost).saturating_sub(1) / w);
        }
        if cap > 0 && !self.res.admissible(support | (1 << j)) {
            cap = 0;
        }
        for v in (0..=cap).rev() {
            let saved = residual.clone();
            for (i, r) in residual.iter_mut().enumerate() {
                *r = r.saturating_sub(self.res.a[i][j] * v);
            }
            self.nu[j] = v;
            let next_support = if v > 0 { support | (1 << j) } else { support };
            self.run(depth + 1, cost + v * w, next_support, residual);
            *residual = saved;
        }
        self.nu[j] = 0;
    }
}

/// Exact minimum by depth-first branch-and-bound.
pub fn contact_codim(res: &LogResolutionInput, query: &ContactQuery) -> Result<ContactSolution> {
    let resolution = res.validate()?;
    solve(&resolution, &query.orders)
}

pub fn solve(res: &Resolution, orders: &[u64]) -> Result<ContactSolution> {
    if orders.len() != res.centers() {
        return Err(Error::InvalidResolution(format!(
            "query has {} orders for {} centers",
            orders.len(),
            res.centers()
        )));
    }
    if orders.contains(&0) {
        return Err(Error::Precondition("contact orders must be at least 1".into()));
    }
    let n = res.divisors();
    // nu_j beyond the point where divisor j alone meets every demand it
    // touches cannot help.
    let caps: Vec<u64> = (0..n)
        .map(|j| {
            (0..res.centers())
                .filter(|&i| res.a[i][j] > 0)
                .map(|i| orders[i].div_ceil(res.a[i][j]))
                .max()
                .unwrap_or(0)
        })
        .collect();
    // Cheapest coverage first, so a good incumbent appears early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        let cover = |j: usize| res.a.iter().map(|row| row[j]).max().unwrap_or(0);
        let (cx, cy) = (cover(x), cover(y));
        // weights[x]/cx < weights[y]/cy, with uncovering divisors last.
        match (cx, cy) {
            (0, 0) => x.cmp(&y),
            (0, _) => std::cmp::Ordering::Greater,
            (_, 0) => std::cmp::Ordering::Less,
            _ => (res.weights[x] * cy).cmp(&(res.weights[y] * cx)).then(x.cmp(&y)),
        }
    });
    let mut search = Search {
        res,
        orders,
        order,
        caps,
        nu: vec![0; n],
        best: None,
    };
    let mut residual = search.orders.to_vec();
    search.run(0, 0, 0, &mut residual);
    Ok(match search.best {
        Some((value, nu)) => ContactSolution::Feasible { value, nu },
        None => ContactSolution::Infeasible,
    })
}

/// Both sides of `codim(Cont^{>=mp}(Y) cap Cont^{>=1}(Z)) <= p codim(Cont^{>=m}(Y) cap Cont^{>=1}(Z))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    pub m: u64,
    pub p: u64,
    pub left: ContactSolution,
    pub right: ContactSolution,
    /// `p` times the optimal witness of the right-hand side.
    pub scaled_witness: Option<Vec<u64>>,
    pub scaled_witness_feasible: Option<bool>,
    /// `None` when either side is infeasible.
    pub holds: Option<bool>,
}

/// Checks the scaling inequality on a two-center resolution where center
/// `z_center` is `Z` and the other center is `Y`.
pub fn scaling_check(res: &LogResolutionInput, m: u64, p: u64, z_center: usize) -> Result<ScalingReport> {
    let resolution = res.validate()?;
    if resolution.centers() != 2 || z_center > 1 {
        return Err(Error::InvalidResolution(
            "the scaling check needs exactly two centers and z_center in {0, 1}".into(),
        ));
    }
    if m == 0 || p == 0 {
        return Err(Error::Precondition("m and p must be at least 1".into()));
    }
    let y_center = 1 - z_center;
    let orders_for = |order: u64| {
        let mut o = vec![1; 2];
        o[y_center] = order;
        o
    };
    let right = solve(&resolution, &orders_for(m))?;
    let left = solve(&resolution, &orders_for(m * p))?;
    let (scaled_witness, scaled_witness_feasible) = match &right {
        ContactSolution::Feasible { nu, .. } => {
            let scaled: Vec<u64> = nu.iter().map(|v| v * p).collect();
            let ok = resolution.feasible(&scaled, &orders_for(m * p));
            (Some(scaled), Some(ok))
        }
        ContactSolution::Infeasible => (None, None),
    };
    let holds = match (left.value(), right.value()) {
        (Some(l), Some(r)) => Some(l <= p * r),
        _ => None,
    };
    Ok(ScalingReport { m, p, left, right, scaled_witness, scaled_witness_feasible, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blowup(centers: usize) -> LogResolutionInput {
        LogResolutionInput { n: 1, k: vec![1], a: vec![vec![1]; centers], families: vec![vec![1]] }
    }

    #[test]
    fn plane_blowup() {
        let sol = contact_codim(&blowup(1), &ContactQuery { orders: vec![3] }).unwrap();
        assert_eq!(sol, ContactSolution::Feasible { value: 6, nu: vec![3] });
    }

    #[test]
    fn smooth_hypersurface() {
        let res = LogResolutionInput { n: 1, k: vec![0], a: vec![vec![1]], families: vec![] };
        for m in 1..6 {
            assert_eq!(contact_codim(&res, &ContactQuery { orders: vec![m] }).unwrap().value(), Some(m));
        }
    }

    #[test]
    fn two_divisors() {
        let res = LogResolutionInput { n: 2, k: vec![1, 2], a: vec![vec![1, 1]], families: vec![vec![1, 2]] };
        let sol = contact_codim(&res, &ContactQuery { orders: vec![2] }).unwrap();
        assert_eq!(sol, ContactSolution::Feasible { value: 4, nu: vec![2, 0] });
    }

    #[test]
    fn disjoint_divisors_cannot_combine() {
        // Y needs both E_1 and E_2, which do not meet.
        let res = LogResolutionInput { n: 2, k: vec![0, 0], a: vec![vec![1, 0], vec![0, 1]], families: vec![] };
        let sol = contact_codim(&res, &ContactQuery { orders: vec![1, 1] }).unwrap();
        assert_eq!(sol, ContactSolution::Infeasible);
        let joined = LogResolutionInput { families: vec![vec![1, 2]], ..res };
        assert_eq!(contact_codim(&joined, &ContactQuery { orders: vec![1, 1] }).unwrap().value(), Some(2));
    }

    #[test]
    fn uncovered_center_is_infeasible() {
        let res = LogResolutionInput { n: 1, k: vec![0], a: vec![vec![0]], families: vec![] };
        assert_eq!(contact_codim(&res, &ContactQuery { orders: vec![1] }).unwrap(), ContactSolution::Infeasible);
    }

    #[test]
    fn malformed_families() {
        let mut res = blowup(1);
        res.families = vec![vec![2]];
        assert!(matches!(res.validate(), Err(Error::InvalidResolution(_))));
        res.families = vec![vec![1, 1]];
        assert!(matches!(res.validate(), Err(Error::InvalidResolution(_))));
        res.families = vec![vec![0]];
        assert!(matches!(res.validate(), Err(Error::InvalidResolution(_))));
        let bad_k = LogResolutionInput { k: vec![1, 2], ..blowup(1) };
        assert!(matches!(bad_k.validate(), Err(Error::InvalidResolution(_))));
    }

    #[test]
    fn query_shape_checked() {
        assert!(contact_codim(&blowup(1), &ContactQuery { orders: vec![1, 1] }).is_err());
        assert!(contact_codim(&blowup(1), &ContactQuery { orders: vec![0] }).is_err());
    }

    #[test]
    fn scaling_on_blowup() {
        let rep = scaling_check(&blowup(2), 1, 3, 1).unwrap();
        assert_eq!(rep.left.value(), Some(6));
        assert_eq!(rep.right.value(), Some(2));
        assert_eq!(rep.holds, Some(true));
        assert_eq!(rep.scaled_witness, Some(vec![3]));
        assert_eq!(rep.scaled_witness_feasible, Some(true));
    }

    #[test]
    fn scaling_with_p_one_is_equality() {
        let rep = scaling_check(&blowup(2), 4, 1, 0).unwrap();
        assert_eq!(rep.left.value(), rep.right.value());
    }

    #[test]
    fn scaling_strict_when_scaled_witness_is_not_optimal() {
        // Y: E_1 with multiplicity 2 (cost 3) or E_2 with multiplicity 1 (cost 2);
        // Z is met by both. For m = 1 the optimum uses E_2 (cost 2), for
        // m = 2 E_1 alone (cost 3) beats the scaled witness 2*E_2 (cost 4).
        let res = LogResolutionInput {
            n: 2,
            k: vec![2, 1],
            a: vec![vec![2, 1], vec![1, 1]],
            families: vec![],
        };
        let rep = scaling_check(&res, 1, 2, 1).unwrap();
        assert_eq!(rep.right.value(), Some(2));
        assert_eq!(rep.left.value(), Some(3));
        assert_eq!(rep.scaled_witness, Some(vec![0, 2]));
        assert_eq!(rep.scaled_witness_feasible, Some(true));
        assert_eq!(rep.holds, Some(true));
    }

    #[test]
    fn scaling_needs_two_centers() {
        assert!(scaling_check(&blowup(1), 1, 2, 0).is_err());
        assert!(scaling_check(&blowup(2), 1, 2, 2).is_err());
    }

    #[test]
    fn infeasible_serializes_as_text() {
        let json = serde_json::to_string(&ContactSolution::Infeasible).unwrap();
        assert_eq!(json, r#"{"value":"infeasible","nu":[]}"#);
    }
}
