use std::collections::HashMap;

use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// Dense row-major matrix of truncated series.
pub type SeriesMatrix = Vec<Vec<TruncatedSeries>>;

fn check_entries(m: &[Vec<TruncatedSeries>]) -> Result<()> {
    let first = m
        .first()
        .and_then(|row| row.first())
        .ok_or_else(|| Error::ShapeError("empty matrix".into()))?;
    let cols = m[0].len();
    for row in m {
        if row.len() != cols {
            return Err(Error::ShapeError("ragged matrix".into()));
        }
        for e in row {
            first.field().ensure_same(&e.field())?;
            if e.order() != first.order() {
                return Err(Error::TruncationMismatch(first.order(), e.order()));
            }
        }
    }
    Ok(())
}

/// Determinant of the submatrix on `rows`, computed by first-row Laplace
/// expansion. `memo` is keyed by the bitmask of remaining columns, so it can
/// be shared by every minor on the same row set.
fn laplace(
    m: &[Vec<TruncatedSeries>],
    rows: &[usize],
    cols: u64,
    memo: &mut HashMap<u64, TruncatedSeries>,
) -> Result<TruncatedSeries> {
    if let Some(hit) = memo.get(&cols) {
        return Ok(hit.clone());
    }
    let depth = rows.len() - cols.count_ones() as usize;
    let row = rows[depth];
    let sample = &m[0][0];
    let mut acc = TruncatedSeries::zero(sample.field(), sample.order());
    let mut sign_negative = false;
    let mut bits = cols;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = &m[row][j];
        if !entry.is_zero() {
            let rest = cols & !(1u64 << j);
            let term = if rest == 0 {
                entry.clone()
            } else {
                entry.mul(&laplace(m, rows, rest, memo)?)?
            };
            acc = if sign_negative { acc.sub(&term)? } else { acc.add(&term)? };
        }
        sign_negative = !sign_negative;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

/// Determinant of a square matrix of truncated series.
pub fn determinant(m: &[Vec<TruncatedSeries>]) -> Result<TruncatedSeries> {
    check_entries(m)?;
    let n = m.len();
    if m[0].len() != n {
        return Err(Error::ShapeError(format!("{}x{} matrix is not square", n, m[0].len())));
    }
    if n > 63 {
        return Err(Error::ShapeError("matrix too large for bitmask expansion".into()));
    }
    let rows: Vec<usize> = (0..n).collect();
    let mut memo = HashMap::new();
    laplace(m, &rows, (1u64 << n) - 1, &mut memo)
}

/// A `size x size` minor with its (0-based, increasing) row and column sets.
#[derive(Debug, Clone)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: TruncatedSeries,
}

/// All `size`-minors, ordered by row set, then column set (lexicographic on
/// sorted index tuples).
pub fn minors(m: &[Vec<TruncatedSeries>], size: usize) -> Result<Vec<Minor>> {
    check_entries(m)?;
    let (r, s) = (m.len(), m[0].len());
    if size == 0 || size > r.min(s) {
        return Ok(Vec::new());
    }
    if s > 63 {
        return Err(Error::ShapeError("too many columns for bitmask expansion".into()));
    }
    let mut out = Vec::new();
    for rows in subsets(r, size) {
        let mut memo = HashMap::new();
        for cols in subsets(s, size) {
            let mask = cols.iter().fold(0u64, |acc, &c| acc | (1u64 << c));
            let value = laplace(m, &rows, mask, &mut memo)?;
            out.push(Minor { rows: rows.clone(), cols, value });
        }
    }
    Ok(out)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
