//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use jetlab::contact::LogResolutionInput;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain subset test against the raw family list: a support is admissible
/// when it is empty, a single divisor, or inside a listed family.
fn admissible(families: &[Vec<usize>], support: &[usize]) -> bool {
    support.len() <= 1 || families.iter().any(|fam| support.iter().all(|j| fam.contains(&(j + 1))))
}

/// Minimum of `sum nu_j (k_j + 1)` by enumerating the box
/// `0 <= nu_j <= max_i m_i`.
pub fn contact_oracle(res: &LogResolutionInput, orders: &[u64]) -> Option<u64> {
    let n = res.n;
    let bound = *orders.iter().max().unwrap();
    let mut nu = vec![0u64; n];
    let mut best: Option<u64> = None;
    loop {
        let support: Vec<usize> = (0..n).filter(|&j| nu[j] > 0).collect();
        let meets = res
            .a
            .iter()
            .zip(orders)
            .all(|(row, &m)| row.iter().zip(&nu).map(|(a, v)| a * v).sum::<u64>() >= m);
        if meets && admissible(&res.families, &support) {
            let cost: u64 = nu.iter().zip(&res.k).map(|(v, k)| v * (k + 1)).sum();
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        let mut j = 0;
        loop {
            if j == n {
                return best;
            }
            if nu[j] < bound {
                nu[j] += 1;
                break;
            }
            nu[j] = 0;
            j += 1;
        }
    }
}

/// Random instance with `n <= 4` divisors, at most two centers, entries
/// of `a` and `k` in `0..=3`, and orders in `1..=5`.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (LogResolutionInput, Vec<u64>) {
    let n = rng.random_range(1..=4usize);
    let centers = rng.random_range(1..=2usize);
    let a = (0..centers).map(|_| (0..n).map(|_| rng.random_range(0..=3u64)).collect()).collect();
    let k = (0..n).map(|_| rng.random_range(0..=3u64)).collect();
    let families = (0..rng.random_range(0..=2usize))
        .map(|_| (1..=n).filter(|_| rng.random_bool(0.5)).collect::<Vec<_>>())
        .filter(|f: &Vec<usize>| !f.is_empty())
        .collect();
    let orders = (0..centers).map(|_| rng.random_range(1..=5u64)).collect();
    (LogResolutionInput { n, k, a, families }, orders)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The plane blown up at the origin: one exceptional divisor with
/// discrepancy 1 and multiplicity 1.
pub fn plane_blowup() -> LogResolutionInput {
    LogResolutionInput { n: 1, k: vec![1], a: vec![vec![1]], families: vec![] }
}

/// Same blow-up with the center listed twice, as `Y` and as `Z`.
pub fn plane_blowup_two_centers() -> LogResolutionInput {
    LogResolutionInput { n: 1, k: vec![1], a: vec![vec![1], vec![1]], families: vec![] }
}
