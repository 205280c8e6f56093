//! Dimension of `k[x]/I` from the leading-term ideal: the size of a largest
//! set of variables containing the support of no leading monomial.

/// Complement of a minimum hitting set of the supports, found by
/// branch-and-bound. `supports` are variable bitmasks over `n` variables; an
/// empty support (a unit ideal) gives `-1`.
pub fn max_independent_set(n: usize, supports: &[u64]) -> i64 {
    if supports.contains(&0) {
        return -1;
    }
    let mut minimal: Vec<u64> = supports.to_vec();
    minimal.sort_by_key(|s| (s.count_ones(), *s));
    minimal.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for s in minimal {
        if kept.iter().all(|&k| k & s != k) {
            kept.push(s);
        }
    }
    let mut best = n;
    hit(&kept, 0, 0, &mut best);
    (n - best) as i64
}

fn hit(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let Some(&open) = supports.iter().find(|&&s| s & chosen == 0) else {
        *best = size;
        return;
    };
    let mut bits = open;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        hit(supports, chosen | (1 << v), size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all variable subsets.
    fn oracle(n: usize, supports: &[u64]) -> i64 {
        if supports.contains(&0) {
            return -1;
        }
        (0u64..1 << n)
            .filter(|&set| supports.iter().all(|&s| s & !set != 0))
            .map(|set| set.count_ones() as i64)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force() {
        let cases: Vec<(usize, Vec<u64>)> = vec![
            (4, vec![0b0011]),
            (4, vec![0b0001, 0b0010, 0b0100, 0b1000]),
            (5, vec![0b00011, 0b00110, 0b01100, 0b11000]),
            (6, vec![0b000111, 0b111000, 0b010010, 0b100001]),
            (3, vec![]),
            (3, vec![0]),
        ];
        for (n, s) in cases {
            assert_eq!(max_independent_set(n, &s), oracle(n, &s), "{s:?}");
        }
    }

    #[test]
    fn pseudo_random_instances() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = 3 + (state >> 60) as usize % 8;
            let k = 1 + (state >> 40) as usize % 6;
            let supports: Vec<u64> = (0..k)
                .map(|i| {
                    let x = state.rotate_left(7 * i as u32 + 3) & ((1 << n) - 1);
                    if x == 0 { 1 } else { x }
                })
                .collect();
            assert_eq!(max_independent_set(n, &supports), oracle(n, &supports));
        }
    }
}
